//! Level reduction: writing a Weyl-invariant Laurent polynomial as a
//! polynomial in the trace generators.
//!
//! Each orbit sum `O(m)` of level `l ≥ 2` is reduced through
//! `T(α)·O(m') = β·O(m) + (terms of level < l)`, where `m'` is `m` with its
//! last nonzero row `α` removed. In type D the orbits of full level are split
//! into the hyperoctahedral orbit sum and its sign-twisted part, the latter
//! being a multiple of `Q`.

use std::collections::HashMap;

use crate::chevalley::{tau_image, GeneratorPoly};
use crate::error::{internal, Error, Result};
use crate::exponent::ExponentMatrix;
use crate::group::{Family, GroupSpec};
use crate::laurent::LaurentPoly;
use crate::scalar::GaussScalar;
use crate::weyl::{
    invariance_violation, orbit_representative, orbit_sum_over, signed_symmetric_group, weyl_elements, SignedPerm,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum OrbitKind {
    Weyl,
    /// The full signed symmetric group; only used in type D.
    Hyper,
}

/// Memoizing decomposer for one group. Reuse it across inputs of the same group.
pub struct Decomposer {
    group: GroupSpec,
    weyl: Vec<SignedPerm>,
    hyper: Vec<SignedPerm>,
    cache: HashMap<(OrbitKind, ExponentMatrix), GeneratorPoly>,
    taus: HashMap<Vec<i64>, LaurentPoly>,
}

/// One-shot convenience wrapper around [`Decomposer`].
pub fn decompose(f: &LaurentPoly) -> Result<GeneratorPoly> {
    Decomposer::new(*f.group())?.decompose(f)
}

/// Free-ring level: the number of nonzero rows.
fn level(m: &ExponentMatrix) -> usize {
    m.nonzero_rows()
}

fn ratio(a: &GaussScalar, b: &GaussScalar) -> Result<GaussScalar> {
    b.checked_inv().map(|inv| a * &inv).ok_or_else(|| internal!("division by a vanishing orbit coefficient"))
}

impl Decomposer {
    pub fn new(group: GroupSpec) -> Result<Self> {
        let weyl = weyl_elements(&group)?;
        let hyper = if group.family == Family::SOeven { signed_symmetric_group(group.rank) } else { Vec::new() };
        Ok(Decomposer { group, weyl, hyper, cache: HashMap::new(), taus: HashMap::new() })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Decompose a Weyl-invariant polynomial. For SL(n) the input is first
    /// reduced modulo the determinant relations; the result expands to an
    /// element equal to `f` in the coordinate ring.
    pub fn decompose(&mut self, f: &LaurentPoly) -> Result<GeneratorPoly> {
        if *f.group() != self.group {
            return Err(Error::Structural(format!("decomposer for {} given a polynomial over {}", self.group, f.group())));
        }
        if f.has_half_weights() {
            return Err(Error::Unsupported("half-integer weights (spin characters) cannot be decomposed".into()));
        }
        if let Some(w) = invariance_violation(f) {
            return Err(Error::Domain(format!("input is not Weyl-invariant: moved by generator {w}")));
        }
        let f = if self.group.family == Family::SL { f.canonicalized() } else { f.clone() };
        self.decompose_invariant(&f, None)
    }

    fn elements(&self, kind: OrbitKind) -> &[SignedPerm] {
        match kind {
            OrbitKind::Weyl => &self.weyl,
            OrbitKind::Hyper => &self.hyper,
        }
    }

    fn orbit_sum(&self, m: &ExponentMatrix, kind: OrbitKind) -> Result<LaurentPoly> {
        orbit_sum_over(m, &self.group, self.elements(kind))
    }

    fn tau(&mut self, alpha: &[i64]) -> Result<LaurentPoly> {
        if let Some(t) = self.taus.get(alpha) {
            return Ok(t.clone());
        }
        let t = tau_image(&self.group, alpha)?;
        self.taus.insert(alpha.to_vec(), t.clone());
        Ok(t)
    }

    /// Peel off Weyl orbit sums from the top level down. `bound` is a strict
    /// upper bound on the levels allowed to appear.
    fn decompose_invariant(&mut self, f: &LaurentPoly, bound: Option<usize>) -> Result<GeneratorPoly> {
        let mut rest = f.clone();
        let mut out = GeneratorPoly::zero();
        while let Some((m, c)) = rest.terms().max_by(|a, b| (level(a.0), a.0).cmp(&(level(b.0), b.0))) {
            let (m, c) = (m.clone(), c.clone());
            if bound.is_some_and(|b| level(&m) >= b) {
                return Err(internal!("level did not descend: {m} has level {} (bound {bound:?})", level(&m)));
            }
            let orbit = self.orbit_sum(&m, OrbitKind::Weyl)?;
            let scale = ratio(&c, &orbit.coeff(&m))?;
            rest.add_scaled(&orbit, &-scale.clone());
            if let Some((left, _)) = orbit.terms().find(|(o, _)| !rest.coeff(o).is_zero()) {
                return Err(internal!("orbit of {m} not removed cleanly at {left}; input not invariant"));
            }
            let d = self.decompose_orbit(&m, OrbitKind::Weyl)?;
            out.add_scaled(&d, &scale);
        }
        Ok(out)
    }

    /// Generator polynomial expanding to the orbit sum of `m` under `kind`.
    fn decompose_orbit(&mut self, m: &ExponentMatrix, kind: OrbitKind) -> Result<GeneratorPoly> {
        let rep = orbit_representative(m, self.elements(kind));
        if let Some(d) = self.cache.get(&(kind, rep.clone())) {
            return Ok(d.clone());
        }
        let n = self.group.rank;
        let l = level(&rep);
        let d = if l == 0 {
            GeneratorPoly::constant(GaussScalar::from_int(self.elements(kind).len() as i64))
        } else if kind == OrbitKind::Weyl && self.group.family == Family::SOeven && l == n {
            // O_W = ½ Σ_{SS_n} w·m + ½ Σ_{SS_n} ε(w) w·m, and the twisted sum is i^{-n} Q.
            let alphas: Vec<Vec<i64>> = (0..n).map(|i| self.int_row(&rep, i)).collect::<Result<_>>()?;
            let half = GaussScalar::from_ratio(1, 2);
            let mut d = self.decompose_orbit(&rep, OrbitKind::Hyper)?.scale(&half);
            d.add_scaled(&GeneratorPoly::q(alphas), &(&half * &GaussScalar::i_pow(-(n as i64))));
            d
        } else if l == 1 {
            self.base_case(&rep, kind)?
        } else {
            self.reduce(&rep, kind)?
        };
        self.cache.insert((kind, rep), d.clone());
        Ok(d)
    }

    fn int_row(&self, m: &ExponentMatrix, i: usize) -> Result<Vec<i64>> {
        m.row_int(i).ok_or_else(|| Error::Unsupported(format!("half-integer row in {m}")))
    }

    /// `O(x_i^α) = a·T(α) + b`.
    fn base_case(&mut self, rep: &ExponentMatrix, kind: OrbitKind) -> Result<GeneratorPoly> {
        let i = (0..rep.rows()).find(|&i| !rep.row_is_zero(i)).expect("level one");
        let alpha = self.int_row(rep, i)?;
        let orbit = self.orbit_sum(rep, kind)?;
        let t = self.tau(&alpha)?;
        let a = ratio(&orbit.coeff(rep), &t.coeff(rep))?;
        let mut residual = orbit;
        residual.add_scaled(&t, &-a.clone());
        let b = residual.constant_term();
        if residual.len() > usize::from(!b.is_zero()) {
            return Err(internal!("level-one orbit of {rep} is not affine in T({alpha:?})"));
        }
        let mut d = GeneratorPoly::tau(alpha, self.group.family).scale(&a);
        d.add_scaled(&GeneratorPoly::constant(b), &GaussScalar::one());
        Ok(d)
    }

    /// `O(m) = (T(α)·O(m') − A) / β` with `A` of strictly lower level.
    fn reduce(&mut self, rep: &ExponentMatrix, kind: OrbitKind) -> Result<GeneratorPoly> {
        let l = level(rep);
        let last = (0..rep.rows()).rev().find(|&i| !rep.row_is_zero(i)).expect("positive level");
        let alpha = self.int_row(rep, last)?;
        let sub = rep.with_row_doubled(last, &vec![0; rep.cols()]);

        let sub_orbit = self.orbit_sum(&sub, kind)?;
        let product = self.tau(&alpha)?.mul_unchecked(&sub_orbit);
        let orbit = self.orbit_sum(rep, kind)?;
        let beta = product.coeff(rep);
        // β counts the ways of rebuilding m from m' and one tau term; it is positive.
        if beta.is_zero() {
            return Err(internal!("reduction coefficient vanished for {rep}"));
        }
        let beta = ratio(&beta, &orbit.coeff(rep))?;
        let mut lower = product;
        lower.add_scaled(&orbit, &-beta.clone());
        if let Some((bad, _)) = lower.terms().find(|(m, _)| level(m) >= l) {
            return Err(internal!("level did not descend while reducing {rep}: {bad} survives"));
        }

        let sub_d = self.decompose_orbit(&sub, kind)?;
        let lower_d = self.decompose_invariant(&lower, Some(l))?;
        let mut d = GeneratorPoly::tau(alpha, self.group.family).mul(&sub_d);
        d.add_scaled(&lower_d, &GaussScalar::from_int(-1));
        Ok(d.scale(&beta.inv()))
    }
}
