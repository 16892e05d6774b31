use crate::error::{domain, structural, Result};
use crate::group::{Family, GroupSpec};
use crate::scalar::Scalar;

/// Tolerance for the `∏ x_{ij} = 1` check on floating-point SL points.
const SL_PRODUCT_TOL: f64 = 1e-9;

/// A point of `𝕋^N` in eigenvalue coordinates: `coords[j][i] = x_{ij}`.
///
/// Half-integer weights of SO(2n) need a chosen branch of
/// `(x_{1j} ··· x_{nj})^{1/2}` per column; it is stored in `half_roots`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint<S> {
    group: GroupSpec,
    coords: Vec<Vec<S>>,
    half_roots: Option<Vec<S>>,
}

impl<S: Scalar> TorusPoint<S> {
    pub fn new(group: GroupSpec, coords: Vec<Vec<S>>) -> Result<Self> {
        if coords.len() != group.factors || coords.iter().any(|c| c.len() != group.rank) {
            return Err(structural!("torus point for {group} needs {} columns of {} coordinates", group.factors, group.rank));
        }
        if coords.iter().flatten().any(Scalar::is_zero) {
            return Err(domain!("torus coordinates must be nonzero"));
        }
        if group.family == Family::SL {
            for (j, col) in coords.iter().enumerate() {
                let prod = col.iter().cloned().fold(S::one(), |a, b| a * b);
                if !(prod - S::one()).is_negligible(1.0, SL_PRODUCT_TOL) {
                    return Err(domain!("column {j} of an SL point must have product 1"));
                }
            }
        }
        Ok(TorusPoint { group, coords, half_roots: None })
    }

    /// Attach square roots `r_j` with `r_j² = ∏_i x_{ij}`.
    pub fn with_half_roots(mut self, roots: Vec<S>) -> Result<Self> {
        if roots.len() != self.group.factors {
            return Err(structural!("need one square-root branch per column"));
        }
        for (j, r) in roots.iter().enumerate() {
            let prod = self.coords[j].iter().cloned().fold(S::one(), |a, b| a * b);
            let scale = prod.magnitude();
            if !(r.clone() * r.clone() - prod).is_negligible(scale, SL_PRODUCT_TOL) {
                return Err(domain!("branch {j} does not square to the column product"));
            }
        }
        self.half_roots = Some(roots);
        Ok(self)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn x(&self, i: usize, j: usize) -> &S {
        &self.coords[j][i]
    }

    /// Eigenvalue parameters of the `j`-th generator.
    pub fn column(&self, j: usize) -> &[S] {
        &self.coords[j]
    }

    pub fn columns(&self) -> &[Vec<S>] {
        &self.coords
    }

    pub fn half_root(&self, j: usize) -> Option<&S> {
        self.half_roots.as_ref().map(|r| &r[j])
    }

    /// The same point viewed as a point for a different (compatible) group spec.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TorusPoint<T> {
        TorusPoint {
            group: self.group,
            coords: self.coords.iter().map(|c| c.iter().map(&f).collect()).collect(),
            half_roots: self.half_roots.as_ref().map(|r| r.iter().map(&f).collect()),
        }
    }
}
