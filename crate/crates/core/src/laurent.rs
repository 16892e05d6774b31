//! Sparse Laurent polynomials in the eigenvalue variables `x_{ij}^{±1}`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{domain, structural, Result};
use crate::exponent::ExponentMatrix;
use crate::group::GroupSpec;
use crate::point::TorusPoint;
use crate::scalar::{GaussScalar, Scalar};

/// An element of `ℂ[𝕋^N]` with exact Gaussian-rational coefficients.
///
/// For SL(n) the stored representative lives in the free Laurent ring; use
/// [`LaurentPoly::canonicalized`] to reduce modulo `∏_i x_{ij} = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    group: GroupSpec,
    terms: BTreeMap<ExponentMatrix, GaussScalar>,
}

impl LaurentPoly {
    pub fn zero(group: GroupSpec) -> Self {
        LaurentPoly { group, terms: BTreeMap::new() }
    }

    pub fn constant(group: GroupSpec, c: GaussScalar) -> Self {
        let mut p = Self::zero(group);
        p.add_term(ExponentMatrix::zeros(group.rank, group.factors), c);
        p
    }

    pub fn monomial(group: GroupSpec, m: ExponentMatrix, c: GaussScalar) -> Result<Self> {
        m.validate_for(&group)?;
        let mut p = Self::zero(group);
        p.add_term(m, c);
        Ok(p)
    }

    /// The variable `x_{ij}` (0-based indices).
    pub fn var(group: GroupSpec, i: usize, j: usize) -> Self {
        let mut m = vec![vec![0; group.factors]; group.rank];
        m[i][j] = 1;
        let m = ExponentMatrix::from_rows(&m).expect("rectangular");
        let mut p = Self::zero(group);
        p.add_term(m, GaussScalar::from_int(1));
        p
    }

    pub fn from_terms(group: GroupSpec, terms: impl IntoIterator<Item = (ExponentMatrix, GaussScalar)>) -> Result<Self> {
        let mut p = Self::zero(group);
        for (m, c) in terms {
            m.validate_for(&group)?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
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

    /// Terms in lexicographic order of the flattened exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentMatrix, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ExponentMatrix) -> GaussScalar {
        self.terms.get(m).cloned().unwrap_or_else(GaussScalar::zero)
    }

    pub fn constant_term(&self) -> GaussScalar {
        self.coeff(&ExponentMatrix::zeros(self.group.rank, self.group.factors))
    }

    pub fn has_half_weights(&self) -> bool {
        self.terms.keys().any(ExponentMatrix::has_half)
    }

    /// Accumulate `c · m` without shape validation.
    pub(crate) fn add_term(&mut self, m: ExponentMatrix, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other` (caller guarantees matching groups).
    pub(crate) fn add_scaled(&mut self, other: &LaurentPoly, c: &GaussScalar) {
        debug_assert_eq!(self.group, other.group);
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    fn check_same_group(&self, other: &LaurentPoly) -> Result<()> {
        if self.group != other.group {
            return Err(structural!("polynomials over {} and {} cannot be combined", self.group, other.group));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same_group(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::from_int(1));
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same_group(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::from_int(-1));
        Ok(out)
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same_group(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.group);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussScalar) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.group);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        self.scale(&GaussScalar::from_int(-1))
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(self.group, GaussScalar::from_int(1));
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Logarithmic derivative `x_{ij} ∂f/∂x_{ij}`.
    pub fn partial(&self, i: usize, j: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.group);
        for (m, c) in &self.terms {
            let d = m.get_doubled(i, j);
            if d != 0 {
                let factor = GaussScalar::real(BigRational::new(d.into(), 2.into()));
                out.add_term(m.clone(), c * &factor);
            }
        }
        out
    }

    /// Apply `f` to every exponent matrix and collect.
    pub fn map_monomials(&self, f: impl Fn(&ExponentMatrix) -> ExponentMatrix) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.group);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Reduce every monomial modulo the SL relations (identity for other families).
    pub fn canonicalized(&self) -> LaurentPoly {
        let g = self.group;
        self.map_monomials(|m| m.canonical_mod_relations(&g))
    }

    /// Equality in the coordinate ring (modulo the SL relations where relevant).
    pub fn eq_in_ring(&self, other: &LaurentPoly) -> bool {
        self.group == other.group && self.canonicalized() == other.canonicalized()
    }

    /// Evaluate at a torus point; the substitution homomorphism.
    pub fn eval<S: Scalar>(&self, p: &TorusPoint<S>) -> Result<S> {
        if p.group().rank != self.group.rank || p.group().factors != self.group.factors {
            return Err(structural!("point for {} cannot evaluate a polynomial over {}", p.group(), self.group));
        }
        let mut total = S::zero();
        for (m, c) in &self.terms {
            total = total + S::from_gauss(c) * eval_monomial(m, p)?;
        }
        Ok(total)
    }
}

pub(crate) fn eval_monomial<S: Scalar>(m: &ExponentMatrix, p: &TorusPoint<S>) -> Result<S> {
    let mut v = S::one();
    for j in 0..m.cols() {
        let half = m.get_doubled(0, j).rem_euclid(2) == 1;
        if half {
            let root = p
                .half_root(j)
                .ok_or_else(|| domain!("half-integer weight needs a square-root branch for column {j}"))?;
            v = v * root.clone();
        }
        for i in 0..m.rows() {
            let d = m.get_doubled(i, j);
            let e = if half { (d - 1) / 2 } else { d / 2 };
            if e != 0 {
                v = v * p.x(i, j).powi(e);
            }
        }
    }
    Ok(v)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for i in 0..m.rows() {
                if !m.row_is_zero(i) {
                    let row: Vec<String> = (0..m.cols())
                        .map(|j| {
                            let d = m.get_doubled(i, j);
                            if d % 2 == 0 { (d / 2).to_string() } else { format!("{d}/2") }
                        })
                        .collect();
                    write!(f, "*x{}^({})", i + 1, row.join(","))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;
    use num_complex::Complex64;

    fn gl(n: usize, big_n: usize) -> GroupSpec {
        GroupSpec::new(Family::GL, n, big_n).unwrap()
    }

    fn int(v: i64) -> GaussScalar {
        GaussScalar::from_int(v)
    }

    fn mono(g: GroupSpec, rows: &[&[i64]], c: GaussScalar) -> LaurentPoly {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        LaurentPoly::monomial(g, ExponentMatrix::from_rows(&rows).unwrap(), c).unwrap()
    }

    #[test]
    fn addition_examples() {
        let g = gl(2, 1);
        let x1 = LaurentPoly::var(g, 0, 0);
        let x2 = LaurentPoly::var(g, 1, 0);
        assert!(x1.add(&x1.neg()).unwrap().is_zero());
        assert_eq!(x1.add(&x2).unwrap().len(), 2);
        let half = x1.scale(&GaussScalar::from_ratio(1, 2));
        assert_eq!(half.add(&half).unwrap(), x1);
    }

    #[test]
    fn multiplication_examples() {
        let g = gl(2, 1);
        let x1 = LaurentPoly::var(g, 0, 0);
        let x1_inv = mono(g, &[&[-1], &[0]], int(1));
        assert_eq!(x1.mul(&x1_inv).unwrap(), LaurentPoly::constant(g, int(1)));

        let x2 = LaurentPoly::var(g, 1, 0);
        let s = x1.add(&x2).unwrap();
        let sq = s.mul(&s).unwrap();
        let expected = LaurentPoly::from_terms(
            g,
            [
                (ExponentMatrix::from_rows(&[vec![2], vec![0]]).unwrap(), int(1)),
                (ExponentMatrix::from_rows(&[vec![1], vec![1]]).unwrap(), int(2)),
                (ExponentMatrix::from_rows(&[vec![0], vec![2]]).unwrap(), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);

        // SL(2), N = 1: (x1 + x2)^2 - (x1^2 + x2^2) = 2 x1 x2 in the free ring.
        let sl = GroupSpec::new(Family::SL, 2, 1).unwrap();
        let y1 = LaurentPoly::var(sl, 0, 0);
        let y2 = LaurentPoly::var(sl, 1, 0);
        let t = y1.add(&y2).unwrap();
        let diff = t.mul(&t).unwrap().sub(&y1.pow(2).add(&y2.pow(2)).unwrap()).unwrap();
        assert_eq!(diff, mono(sl, &[&[1], &[1]], int(2)));
        // ... which is the constant 2 modulo the SL relation.
        assert_eq!(diff.canonicalized(), LaurentPoly::constant(sl, int(2)));
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = LaurentPoly::var(gl(2, 1), 0, 0);
        let b = LaurentPoly::var(gl(3, 1), 0, 0);
        assert!(matches!(a.add(&b), Err(crate::Error::Structural(_))));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let g = gl(2, 1);
        let p = TorusPoint::new(g, vec![vec![int(2), int(3)]]).unwrap();
        let x1 = LaurentPoly::var(g, 0, 0);
        let x2 = LaurentPoly::var(g, 1, 0);
        assert_eq!(x1.eval(&p).unwrap(), int(2));
        assert_eq!(mono(g, &[&[-1], &[0]], int(1)).eval(&p).unwrap(), GaussScalar::from_ratio(1, 2));
        assert_eq!(x1.add(&x2).unwrap().eval(&p).unwrap(), int(5));
        let pf = p.map(|v| v.to_complex());
        assert!((x1.add(&x2).unwrap().eval(&pf).unwrap() - Complex64::new(5.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn half_weight_evaluation_uses_branch() {
        let d = GroupSpec::new(Family::SOeven, 2, 1).unwrap();
        let m = ExponentMatrix::from_doubled(2, 1, vec![1, -1]).unwrap();
        let f = LaurentPoly::monomial(d, m, int(1)).unwrap();
        let p = TorusPoint::new(d, vec![vec![int(2), int(8)]]).unwrap();
        assert!(f.eval(&p).is_err());
        // x1^{1/2} x2^{-1/2} = x2^{-1} (x1 x2)^{1/2} = 4/8.
        let p = p.with_half_roots(vec![int(4)]).unwrap();
        assert_eq!(f.eval(&p).unwrap(), GaussScalar::from_ratio(1, 2));
    }

    #[test]
    fn partial_examples() {
        let g = gl(1, 1);
        let x = LaurentPoly::var(g, 0, 0);
        let x2 = x.pow(2);
        assert_eq!(x2.partial(0, 0), x2.scale(&int(2)));
        let xi = mono(g, &[&[-1]], int(1));
        assert_eq!(xi.partial(0, 0), xi.neg());
        assert!(LaurentPoly::constant(g, int(7)).partial(0, 0).is_zero());
    }
}
