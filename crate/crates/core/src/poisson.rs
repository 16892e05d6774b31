//! Symbolic Poisson algebra of the trace functions `τ_{(p,q)}` on the
//! ℤ²-character variety, restricted to the torus.
//!
//! For lattice vectors `a, b` with `d = det(a, b)`:
//!
//! * SL(n): `{τ_a, τ_b} = (d/c)·(τ_{a+b} − τ_a τ_b / n)`
//! * Sp, SO: `{τ_a, τ_b} = (d/2c)·(τ_{a+b} − τ_{a−b})`
//! * GL(n), only on request: `{τ_a, τ_b} = (d/c)·τ_{a+b}`
//!
//! Brackets of products follow from bilinearity and the Leibniz rule.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chevalley::tau_image;
use crate::error::{domain, structural, Result};
use crate::group::{Family, GroupSpec};
use crate::point::TorusPoint;
use crate::scalar::{GaussScalar, Scalar};

pub type Lattice = [i64; 2];

/// `τ_{-a} = τ_a` on the self-dual families; keep the lexicographically larger sign.
fn normalize(family: Family, a: Lattice) -> Lattice {
    if family.is_self_dual() && (a[0] < 0 || (a[0] == 0 && a[1] < 0)) {
        [-a[0], -a[1]]
    } else {
        a
    }
}

pub fn det(a: Lattice, b: Lattice) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Polynomial in the symbols `τ_{(p,q)}` with exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TauPoly {
    group: GroupSpec,
    c: BigRational,
    terms: BTreeMap<Vec<Lattice>, GaussScalar>,
}

impl TauPoly {
    pub fn zero(group: GroupSpec, c: BigRational) -> Result<Self> {
        if group.factors != 2 {
            return Err(structural!("trace symbols τ_(p,q) live over Z^2, not Z^{}", group.factors));
        }
        if c.is_zero() {
            return Err(domain!("the form parameter c must be nonzero"));
        }
        Ok(TauPoly { group, c, terms: BTreeMap::new() })
    }

    fn empty_like(&self) -> Self {
        TauPoly { group: self.group, c: self.c.clone(), terms: BTreeMap::new() }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn c(&self) -> &BigRational {
        &self.c
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

    pub fn terms(&self) -> impl Iterator<Item = (&[Lattice], &GaussScalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, key: &[Lattice]) -> GaussScalar {
        let mut key: Vec<Lattice> = key.iter().map(|&a| normalize(self.group.family, a)).collect();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(GaussScalar::zero)
    }

    /// Add `coeff · τ_{k_1} ··· τ_{k_r}`; symbols are normalized here.
    pub fn add_term(&mut self, key: &[Lattice], coeff: GaussScalar) {
        if coeff.is_zero() {
            return;
        }
        let mut key: Vec<Lattice> = key.iter().map(|&a| normalize(self.group.family, a)).collect();
        key.sort();
        let entry = self.terms.entry(key.clone()).or_insert_with(GaussScalar::zero);
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn with_term(mut self, key: &[Lattice], coeff: GaussScalar) -> Self {
        self.add_term(key, coeff);
        self
    }

    fn check_compatible(&self, other: &TauPoly) -> Result<()> {
        if self.group != other.group || self.c != other.c {
            return Err(structural!(
                "trace polynomials over {} (c = {}) and {} (c = {}) cannot be combined",
                self.group,
                self.c,
                other.group,
                other.c
            ));
        }
        Ok(())
    }

    fn add_scaled(&mut self, other: &TauPoly, s: &GaussScalar) {
        for (k, v) in &other.terms {
            self.add_term(k, v * s);
        }
    }

    pub fn add(&self, other: &TauPoly) -> Result<TauPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &TauPoly) -> Result<TauPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::from_int(-1));
        Ok(out)
    }

    pub fn scale(&self, s: &GaussScalar) -> TauPoly {
        let mut out = self.empty_like();
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> TauPoly {
        self.scale(&GaussScalar::from_int(-1))
    }

    pub fn mul(&self, other: &TauPoly) -> Result<TauPoly> {
        self.check_compatible(other)?;
        let mut out = self.empty_like();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key: Vec<Lattice> = ka.iter().chain(kb).copied().collect();
                out.add_term(&key, ca * cb);
            }
        }
        Ok(out)
    }

    /// Evaluate at a torus point by substituting the torus image of every symbol.
    pub fn eval<S: Scalar>(&self, p: &TorusPoint<S>) -> Result<S> {
        tau_eval(self, p)
    }
}

impl fmt::Debug for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().map(|(key, c)| {
            let mut s = format!("({c})");
            for a in key {
                s.push_str(&format!("*tau({},{})", a[0], a[1]));
            }
            s
        });
        write!(f, "{}", parts.format(" + "))
    }
}

/// `τ`-polynomial evaluated at a torus point.
pub fn tau_eval<S: Scalar>(f: &TauPoly, p: &TorusPoint<S>) -> Result<S> {
    let g = f.group();
    if p.group().rank != g.rank || p.group().factors != 2 {
        return Err(structural!("point for {} cannot evaluate trace functions of {}", p.group(), g));
    }
    let mut values: HashMap<Lattice, S> = HashMap::new();
    let mut total = S::zero();
    for (key, c) in f.terms() {
        let mut v = S::from_gauss(c);
        for a in key {
            if !values.contains_key(a) {
                let img = tau_image(g, a)?;
                values.insert(*a, img.eval(p)?);
            }
            v = v * values[a].clone();
        }
        total = total + v;
    }
    Ok(total)
}

/// Outcome of a Jacobi check.
#[derive(Debug, Clone, PartialEq)]
pub enum JacobiOutcome {
    /// The defect is the zero polynomial in the free symbol algebra.
    IdenticallyZero,
    /// The defect is a nonzero polynomial that vanishes at every sampled point.
    NumericallyZero { max_abs: f64 },
    /// The defect does not vanish at some sampled point.
    Nonzero { max_abs: f64 },
}

impl JacobiOutcome {
    pub fn holds(&self) -> bool {
        !matches!(self, JacobiOutcome::Nonzero { .. })
    }
}

/// Structure-constant table over the window `max(|p|, |q|) ≤ cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTable {
    pub group: GroupSpec,
    pub c: BigRational,
    pub cutoff: i64,
    /// Unordered pairs `a ≤ b` in lexicographic order of the window.
    pub entries: Vec<(Lattice, Lattice, TauPoly)>,
}

impl StructureTable {
    /// `{τ_a, τ_b}`, using antisymmetry for pairs stored the other way round.
    pub fn entry(&self, a: Lattice, b: Lattice) -> Option<TauPoly> {
        self.entries.iter().find_map(|(x, y, v)| {
            if (*x, *y) == (a, b) {
                Some(v.clone())
            } else if (*x, *y) == (b, a) {
                Some(v.neg())
            } else {
                None
            }
        })
    }
}

/// The bracket for one group and one value of `c`.
#[derive(Debug, Clone)]
pub struct PoissonAlgebra {
    group: GroupSpec,
    c: BigRational,
    extrapolated: bool,
}

impl PoissonAlgebra {
    pub fn new(group: GroupSpec, c: BigRational) -> Result<Self> {
        TauPoly::zero(group, c.clone())?;
        Ok(PoissonAlgebra { group, c, extrapolated: false })
    }

    /// Allow the conjectural GL(n) rule `{τ_a, τ_b} = (d/c)·τ_{a+b}`.
    pub fn with_extrapolated(mut self, on: bool) -> Self {
        self.extrapolated = on;
        self
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn zero(&self) -> TauPoly {
        TauPoly { group: self.group, c: self.c.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(&self, v: GaussScalar) -> TauPoly {
        self.zero().with_term(&[], v)
    }

    pub fn symbol(&self, a: Lattice) -> TauPoly {
        self.zero().with_term(&[a], GaussScalar::one())
    }

    pub fn bracket_symbols(&self, a: Lattice, b: Lattice) -> Result<TauPoly> {
        let d = det(a, b);
        let sum = [a[0] + b[0], a[1] + b[1]];
        let diff = [a[0] - b[0], a[1] - b[1]];
        let pref = |den: i64| GaussScalar::real(BigRational::from_integer(d.into()) / (&self.c * BigRational::from_integer(den.into())));
        let out = self.zero();
        if d == 0 {
            return match self.group.family {
                Family::GL if !self.extrapolated => Err(self.gl_refusal()),
                _ => Ok(out),
            };
        }
        Ok(match self.group.family {
            Family::SL => {
                let p = pref(1);
                let n = GaussScalar::from_int(self.group.rank as i64);
                out.with_term(&[sum], p.clone()).with_term(&[a, b], -(&p / &n))
            }
            Family::Sp | Family::SOodd | Family::SOeven => {
                let p = pref(2);
                out.with_term(&[sum], p.clone()).with_term(&[diff], -p)
            }
            Family::GL if self.extrapolated => out.with_term(&[sum], pref(1)),
            Family::GL => return Err(self.gl_refusal()),
        })
    }

    fn gl_refusal(&self) -> crate::Error {
        domain!("no bracket formula for GL(n) trace functions; pass the extrapolated flag for the conjectural rule")
    }

    /// Bilinear, Leibniz extension of [`Self::bracket_symbols`].
    pub fn bracket(&self, f: &TauPoly, h: &TauPoly) -> Result<TauPoly> {
        let base = self.zero();
        base.check_compatible(f)?;
        base.check_compatible(h)?;
        let mut cache: HashMap<(Lattice, Lattice), TauPoly> = HashMap::new();
        let mut out = self.zero();
        for (kf, cf) in f.terms() {
            for (kh, ch) in h.terms() {
                let coeff = cf * ch;
                for i in 0..kf.len() {
                    for j in 0..kh.len() {
                        let pair = (kf[i], kh[j]);
                        if let Entry::Vacant(slot) = cache.entry(pair) {
                            slot.insert(self.bracket_symbols(pair.0, pair.1)?);
                        }
                        let rest: Vec<Lattice> = kf
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != i)
                            .chain(kh.iter().enumerate().filter(|&(k, _)| k != j))
                            .map(|(_, a)| *a)
                            .collect();
                        for (kb, cb) in cache[&pair].terms() {
                            let key: Vec<Lattice> = rest.iter().chain(kb).copied().collect();
                            out.add_term(&key, &coeff * cb);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `{{τ_a,τ_b},τ_e} + {{τ_b,τ_e},τ_a} + {{τ_e,τ_a},τ_b}`.
    pub fn jacobi_defect(&self, a: Lattice, b: Lattice, e: Lattice) -> Result<TauPoly> {
        let mut total = self.zero();
        for (x, y, z) in [(a, b, e), (b, e, a), (e, a, b)] {
            let inner = self.bracket_symbols(x, y)?;
            total = total.add(&self.bracket(&inner, &self.symbol(z))?)?;
        }
        Ok(total)
    }

    /// Classify the Jacobi defect: identically zero, or else checked at `points`.
    pub fn jacobi_outcome<S: Scalar>(
        &self,
        a: Lattice,
        b: Lattice,
        e: Lattice,
        points: &[TorusPoint<S>],
        tol: f64,
    ) -> Result<JacobiOutcome> {
        let defect = self.jacobi_defect(a, b, e)?;
        if defect.is_zero() {
            return Ok(JacobiOutcome::IdenticallyZero);
        }
        let mut max_abs: f64 = 0.0;
        for p in points {
            max_abs = max_abs.max(tau_eval(&defect, p)?.magnitude());
        }
        Ok(if max_abs < tol { JacobiOutcome::NumericallyZero { max_abs } } else { JacobiOutcome::Nonzero { max_abs } })
    }

    pub fn structure_constants(&self, cutoff: i64) -> Result<StructureTable> {
        if cutoff < 1 {
            return Err(domain!("cutoff must be at least 1"));
        }
        let window: Vec<Lattice> = (-cutoff..=cutoff)
            .cartesian_product(-cutoff..=cutoff)
            .map(|(p, q)| [p, q])
            .filter(|a| *a != [0, 0])
            .collect();
        let mut entries = Vec::new();
        for (i, &a) in window.iter().enumerate() {
            for &b in &window[i..] {
                entries.push((a, b, self.bracket_symbols(a, b)?));
            }
        }
        Ok(StructureTable { group: self.group, c: self.c.clone(), cutoff, entries })
    }
}
