//! Trace generators of the character variety and their images on the torus.
//!
//! `T(α)` is the trace function of `α ∈ ℤᴺ`; for SO(2n) there is in addition
//! the Pfaffian-type generator `Q(α_1, ..., α_n)`. A [`GeneratorPoly`] is a
//! commutative polynomial in these symbols.

mod decompose;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::error::{domain, structural, Result};
use crate::exponent::ExponentMatrix;
use crate::group::{Family, GroupSpec};
use crate::laurent::LaurentPoly;
use crate::scalar::GaussScalar;

pub use decompose::{decompose, Decomposer};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSymbol {
    Tau(Vec<i64>),
    Q(Vec<Vec<i64>>),
}

impl GeneratorSymbol {
    fn check(&self, g: &GroupSpec) -> Result<()> {
        match self {
            GeneratorSymbol::Tau(a) if a.len() != g.factors => {
                Err(structural!("T{a:?} has dimension {}, expected {}", a.len(), g.factors))
            }
            GeneratorSymbol::Q(alphas) => {
                if g.family != Family::SOeven {
                    return Err(domain!("Q generators exist only for SO(2n), not {g}"));
                }
                if alphas.len() != g.rank || alphas.iter().any(|a| a.len() != g.factors) {
                    return Err(structural!("Q needs {} vectors in Z^{}", g.rank, g.factors));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vec = |a: &[i64]| a.iter().map(i64::to_string).join(",");
        match self {
            GeneratorSymbol::Tau(a) => write!(f, "T({})", vec(a)),
            GeneratorSymbol::Q(alphas) => {
                write!(f, "Q({})", alphas.iter().map(|a| format!("[{}]", vec(a))).join(","))
            }
        }
    }
}

fn first_nonzero_negative(a: &[i64]) -> bool {
    a.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0)
}

/// Polynomial in trace generators; keys are sorted multisets of symbols.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GeneratorPoly {
    terms: BTreeMap<Vec<GeneratorSymbol>, GaussScalar>,
}

impl GeneratorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    /// `T(α)`, with `α` and `-α` identified for the self-dual families.
    pub fn tau(alpha: Vec<i64>, family: Family) -> Self {
        let alpha = if family.is_self_dual() && first_nonzero_negative(&alpha) {
            alpha.iter().map(|v| -v).collect()
        } else {
            alpha
        };
        Self::from_symbols(vec![GeneratorSymbol::Tau(alpha)], GaussScalar::one())
    }

    /// `Q(α_1, ..., α_n)`, normalized: each `α_k` made lexicographically
    /// positive (each flip negates), then the list sorted. Zero if some `α_k = 0`.
    pub fn q(alphas: Vec<Vec<i64>>) -> Self {
        let mut sign = 1;
        let mut normalized = Vec::with_capacity(alphas.len());
        for a in alphas {
            if a.iter().all(|&v| v == 0) {
                return Self::zero();
            }
            if first_nonzero_negative(&a) {
                sign = -sign;
                normalized.push(a.iter().map(|v| -v).collect());
            } else {
                normalized.push(a);
            }
        }
        normalized.sort();
        Self::from_symbols(vec![GeneratorSymbol::Q(normalized)], GaussScalar::from_int(sign))
    }

    pub fn from_symbols(mut symbols: Vec<GeneratorSymbol>, c: GaussScalar) -> Self {
        symbols.sort();
        let mut p = Self::zero();
        p.add_term(symbols, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[GeneratorSymbol], &GaussScalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub(crate) fn add_term(&mut self, key: Vec<GeneratorSymbol>, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(GaussScalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &GeneratorPoly, c: &GaussScalar) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &GeneratorPoly) -> GeneratorPoly {
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::one());
        out
    }

    pub fn sub(&self, other: &GeneratorPoly) -> GeneratorPoly {
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &GaussScalar) -> GeneratorPoly {
        let mut out = GeneratorPoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &GeneratorPoly) -> GeneratorPoly {
        let mut out = GeneratorPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut key: Vec<GeneratorSymbol> = ka.iter().chain(kb).cloned().collect();
                key.sort();
                out.add_term(key, ca * cb);
            }
        }
        out
    }

    /// Substitute the torus images of the generators and multiply out.
    pub fn expand(&self, g: &GroupSpec) -> Result<LaurentPoly> {
        let mut images: HashMap<&GeneratorSymbol, LaurentPoly> = HashMap::new();
        for sym in self.terms.keys().flatten() {
            if !images.contains_key(sym) {
                sym.check(g)?;
                let img = match sym {
                    GeneratorSymbol::Tau(a) => tau_image(g, a)?,
                    GeneratorSymbol::Q(alphas) => q_image(g, alphas)?,
                };
                images.insert(sym, img);
            }
        }
        let mut out = LaurentPoly::zero(*g);
        for (key, c) in &self.terms {
            let mut prod = LaurentPoly::constant(*g, c.clone());
            for sym in key {
                prod = prod.mul_unchecked(&images[sym]);
            }
            out.add_scaled(&prod, &GaussScalar::one());
        }
        Ok(out)
    }
}

impl fmt::Debug for GeneratorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GeneratorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().map(|(key, c)| {
            let mut s = format!("({c})");
            for sym in key {
                s.push('*');
                s.push_str(&sym.to_string());
            }
            s
        });
        write!(f, "{}", parts.format(" + "))
    }
}

/// `x_i^α ± x_i^{-α}` as a Laurent polynomial.
fn row_pair(g: &GroupSpec, i: usize, alpha: &[i64], sign: i64) -> LaurentPoly {
    let plus = ExponentMatrix::single_row(g.rank, i, alpha);
    let mut p = LaurentPoly::zero(*g);
    p.add_term(plus.neg(), GaussScalar::from_int(sign));
    p.add_term(plus, GaussScalar::one());
    p
}

/// Torus image of the trace function `τ_α`.
pub fn tau_image(g: &GroupSpec, alpha: &[i64]) -> Result<LaurentPoly> {
    if alpha.len() != g.factors {
        return Err(structural!("α has dimension {}, expected {}", alpha.len(), g.factors));
    }
    let mut out = LaurentPoly::zero(*g);
    let one = GaussScalar::one();
    for i in 0..g.rank {
        if g.family.has_signs() {
            out.add_scaled(&row_pair(g, i, alpha, 1), &one);
        } else {
            out.add_term(ExponentMatrix::single_row(g.rank, i, alpha), one.clone());
        }
    }
    if g.family == Family::SOodd {
        out.add_term(ExponentMatrix::zeros(g.rank, g.factors), one);
    }
    Ok(out)
}

/// Torus image of the SO(2n) generator `Q(α_1, ..., α_n)`:
/// `iⁿ Σ_{σ∈S_n} ∏_k (x_{σ(k)}^{α_k} − x_{σ(k)}^{−α_k})`.
///
/// This is the polarized Pfaffian of the antisymmetric parts of the torus
/// block matrices, normalized by `2^{-n}`; it is symmetric in the `α_k` and
/// invariant under the Weyl group of type D.
pub fn q_image(g: &GroupSpec, alphas: &[Vec<i64>]) -> Result<LaurentPoly> {
    GeneratorSymbol::Q(alphas.to_vec()).check(g)?;
    let n = g.rank;
    let mut sum = LaurentPoly::zero(*g);
    for sigma in (0..n).permutations(n) {
        let mut prod = LaurentPoly::constant(*g, GaussScalar::one());
        for (k, alpha) in alphas.iter().enumerate() {
            prod = prod.mul_unchecked(&row_pair(g, sigma[k], alpha, -1));
        }
        sum.add_scaled(&prod, &GaussScalar::one());
    }
    Ok(sum.scale(&GaussScalar::i_pow(n as i64)))
}
