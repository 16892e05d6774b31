//! Weyl groups of the classical families as subgroups of the signed
//! symmetric group, their action on Laurent polynomials, and levels.

use std::fmt;

use itertools::Itertools;

use crate::error::{domain, Error, Result};
use crate::exponent::ExponentMatrix;
use crate::group::{Family, GroupSpec};
use crate::laurent::LaurentPoly;
use crate::scalar::GaussScalar;

/// Default bound on the number of Weyl group elements we are willing to enumerate.
pub const DEFAULT_WEYL_CAP: u128 = 1_000_000;

/// An element of `SS_n = S_n ⋉ (ℤ/2)^n`.
///
/// Acting on a monomial, row `i` moves to row `perm[i]` and is multiplied by `signs[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(domain!("signs must be n values in {{+1, -1}}"));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(domain!("{perm:?} is not a permutation"));
            }
        }
        Ok(SignedPerm { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut w = Self::identity(n);
        w.perm.swap(a, b);
        w
    }

    pub fn sign_flip(n: usize, indices: &[usize]) -> Self {
        let mut w = Self::identity(n);
        for &i in indices {
            w.signs[i] = -w.signs[i];
        }
        w
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// `self ∘ other`: act by `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = other.perm.iter().zip(&other.signs).map(|(&p, &s)| self.signs[p] * s).collect();
        SignedPerm { perm, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.degree();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPerm { perm, signs }
    }

    /// Membership in the Weyl group of `family`.
    pub fn belongs_to(&self, family: Family) -> bool {
        match family {
            Family::GL | Family::SL => self.negative_count() == 0,
            Family::Sp | Family::SOodd => true,
            Family::SOeven => self.negative_count().is_multiple_of(2),
        }
    }

    pub fn act_monomial(&self, m: &ExponentMatrix) -> ExponentMatrix {
        let cols = m.cols();
        let mut out = vec![0i64; m.rows() * cols];
        for i in 0..m.rows() {
            let target = self.perm[i];
            let s = i64::from(self.signs[i]);
            for (j, d) in m.row_doubled(i).iter().enumerate() {
                out[target * cols + j] = s * d;
            }
        }
        ExponentMatrix::from_doubled(m.rows(), cols, out).expect("shape preserved")
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .enumerate()
            .map(|(i, (p, s))| format!("{}->{}{}", i + 1, if *s < 0 { "-" } else { "" }, p + 1))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Every element of the hyperoctahedral group `SS_n`.
pub fn signed_symmetric_group(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for perm in (0..n).permutations(n) {
        for mask in 0u64..(1 << n) {
            let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPerm { perm: perm.clone(), signs });
        }
    }
    out
}

pub fn weyl_elements(g: &GroupSpec) -> Result<Vec<SignedPerm>> {
    weyl_elements_capped(g, DEFAULT_WEYL_CAP)
}

pub fn weyl_elements_capped(g: &GroupSpec, cap: u128) -> Result<Vec<SignedPerm>> {
    let order = g.weyl_order();
    if order > cap {
        return Err(Error::Resource(format!("Weyl group of {g} has {order} elements (cap {cap})")));
    }
    let n = g.rank;
    if !g.family.has_signs() {
        return Ok((0..n).permutations(n).map(|perm| SignedPerm { perm, signs: vec![1; n] }).collect());
    }
    Ok(signed_symmetric_group(n).into_iter().filter(|w| w.belongs_to(g.family)).collect())
}

/// A generating set: adjacent transpositions plus one sign flip (or a pair of flips in type D).
pub fn weyl_generators(g: &GroupSpec) -> Vec<SignedPerm> {
    let n = g.rank;
    let mut gens: Vec<SignedPerm> = (0..n.saturating_sub(1)).map(|i| SignedPerm::transposition(n, i, i + 1)).collect();
    match g.family {
        Family::Sp | Family::SOodd => gens.push(SignedPerm::sign_flip(n, &[n - 1])),
        Family::SOeven if n >= 2 => gens.push(SignedPerm::sign_flip(n, &[n - 2, n - 1])),
        _ => {}
    }
    gens
}

pub fn act(w: &SignedPerm, f: &LaurentPoly) -> LaurentPoly {
    f.map_monomials(|m| w.act_monomial(m))
}

/// `Σ_{w ∈ W} w·m`, summed over group elements (stabilized monomials accumulate multiplicity).
pub fn orbit_sum(m: &ExponentMatrix, g: &GroupSpec) -> Result<LaurentPoly> {
    let elements = weyl_elements(g)?;
    orbit_sum_over(m, g, &elements)
}

pub(crate) fn orbit_sum_over(m: &ExponentMatrix, g: &GroupSpec, elements: &[SignedPerm]) -> Result<LaurentPoly> {
    m.validate_for(g)?;
    let one = GaussScalar::from_int(1);
    LaurentPoly::from_terms(*g, elements.iter().map(|w| (w.act_monomial(m), one.clone())))
}

/// A Weyl generator that moves `f`, if any. For SL(n) the comparison is made modulo the relations.
pub fn invariance_violation(f: &LaurentPoly) -> Option<SignedPerm> {
    let g = f.group();
    let base = f.canonicalized();
    weyl_generators(g).into_iter().find(|w| act(w, f).canonicalized() != base)
}

pub fn is_invariant(f: &LaurentPoly) -> bool {
    invariance_violation(f).is_none()
}

/// Minimal number of nonvanishing rows over all presentations of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(pub usize);

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn level_of_monomial(m: &ExponentMatrix, g: &GroupSpec) -> Level {
    match g.family {
        // The presentation is ambiguous up to adding a common row; the best shift zeroes the most frequent row.
        Family::SL => Level(g.rank - m.dominant_row().1),
        _ => Level(m.nonzero_rows()),
    }
}

pub fn level_of_poly(f: &LaurentPoly) -> Result<Level> {
    let g = f.group();
    f.terms()
        .map(|(m, _)| level_of_monomial(m, g))
        .max()
        .ok_or_else(|| domain!("the zero polynomial has no level"))
}

/// The lexicographically smallest element of the W-orbit of `m`.
pub fn orbit_representative(m: &ExponentMatrix, elements: &[SignedPerm]) -> ExponentMatrix {
    elements.iter().map(|w| w.act_monomial(m)).min().unwrap_or_else(|| m.clone())
}
