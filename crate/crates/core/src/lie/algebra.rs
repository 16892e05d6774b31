//! Killing constants, the adjoint action, variation functions and
//! first cohomology of ℤᴺ with coefficients in 𝔤.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{domain, internal, structural, Result};
use crate::group::{Family, GroupSpec};
use crate::lie::matrix::Matrix;
use crate::lie::models::{lie_basis, LieBasis};
use crate::scalar::{GaussScalar, Scalar};

/// Matrix of `ad X` in the basis coordinates.
fn ad_matrix(basis: &LieBasis, x: &Matrix<GaussScalar>) -> Matrix<GaussScalar> {
    let d = basis.dim();
    let mut out = Matrix::zeros(d, d);
    for (b, e) in basis.elements().iter().enumerate() {
        for (a, v) in basis.coordinates(&x.commutator(e)).into_iter().enumerate() {
            out.set(a, b, v);
        }
    }
    out
}

/// The constant `c_𝔤` with `Tr(ad X ad Y) = c_𝔤 · Tr(XY)`, computed on the whole basis.
pub fn killing_ratio(g: &GroupSpec) -> Result<BigRational> {
    match (g.family, g.rank) {
        (Family::GL, _) => return Err(domain!("gl(n) is not semisimple")),
        (Family::SL, 1) => return Err(domain!("sl(1) is zero")),
        (Family::SOeven, 1) => return Err(domain!("so(2) is abelian; its Killing form vanishes")),
        _ => {}
    }
    let basis = lie_basis(g);
    let ads: Vec<Matrix<GaussScalar>> = basis.elements().iter().map(|x| ad_matrix(&basis, x)).collect();
    let mut ratio: Option<GaussScalar> = None;
    for (a, xa) in basis.elements().iter().enumerate() {
        for (b, xb) in basis.elements().iter().enumerate().skip(a) {
            let kappa = ads[a].trace_product(&ads[b]);
            let trace = xa.trace_product(xb);
            if trace.is_zero() {
                if !kappa.is_zero() {
                    return Err(internal!("Killing form not proportional to the trace form at ({a}, {b})"));
                }
                continue;
            }
            let r = &kappa / &trace;
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev != r => {
                    return Err(internal!("Killing ratio varies: {prev} vs {r} at ({a}, {b})"));
                }
                _ => {}
            }
        }
    }
    let r = ratio.ok_or_else(|| internal!("trace form vanishes on the basis"))?;
    if !r.is_real() {
        return Err(internal!("non-real Killing ratio {r}"));
    }
    Ok(r.re)
}

/// Matrix of `X ↦ A X A⁻¹` in the basis coordinates.
pub fn ad_operator<S: Scalar>(basis: &LieBasis, a: &Matrix<S>) -> Result<Matrix<S>> {
    let a_inv = a.inverse()?;
    let d = basis.dim();
    let mut out = Matrix::zeros(d, d);
    for (b, e) in basis.elements_as::<S>().iter().enumerate() {
        let img = a.mul(e).mul(&a_inv);
        for (r, v) in basis.coordinates(&img).into_iter().enumerate() {
            out.set(r, b, v);
        }
    }
    Ok(out)
}

/// Variation function `F(A)`, dual under `c·Tr` to the differential of `A ↦ Tr A`:
///
/// * SL(n): `(A − Tr(A)/n · I)/c`
/// * Sp, SO: `(A − A⁻¹)/(2c)`
/// * GL(n): `A/c`
pub fn variation<S: Scalar>(g: &GroupSpec, a: &Matrix<S>, c: &BigRational) -> Result<Matrix<S>> {
    if c.is_zero() {
        return Err(domain!("c must be nonzero"));
    }
    let m = g.matrix_size();
    if a.rows() != m || a.cols() != m {
        return Err(structural!("{g} acts on {m}x{m} matrices"));
    }
    let inv_c = S::from_gauss(&GaussScalar::real(c.recip()));
    Ok(match g.family {
        Family::GL => a.scale(&inv_c),
        Family::SL => {
            let shift = a.trace() / S::from_int(m as i64);
            a.sub(&Matrix::identity(m).scale(&shift)).scale(&inv_c)
        }
        Family::Sp | Family::SOodd | Family::SOeven => {
            let a_inv = a.inverse().map_err(|_| domain!("variation needs an invertible matrix"))?;
            a.sub(&a_inv).scale(&(inv_c / S::from_int(2)))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyDims {
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

impl CohomologyDims {
    /// Values at a generic torus representation: `(N·r + d − r, d − r, N·r)`.
    pub fn expected_generic(g: &GroupSpec, n_gens: usize) -> Self {
        let (d, r) = (g.lie_dim(), g.group_rank());
        CohomologyDims { z1: n_gens * r + d - r, b1: d - r, h1: n_gens * r }
    }
}

/// `H¹(ℤᴺ, V)` for commuting automorphisms `T_1, ..., T_N` of `V`.
///
/// Cocycles are tuples `(u_i)` with `(T_j − 1)u_i = (T_i − 1)u_j`;
/// coboundaries are `((T_i − 1)v)_i`.
pub fn cohomology_of_action<S: Scalar>(actions: &[Matrix<S>]) -> Result<CohomologyDims> {
    let Some(first) = actions.first() else {
        return Err(domain!("need at least one generator"));
    };
    let d = first.rows();
    if actions.iter().any(|t| t.rows() != d || t.cols() != d) {
        return Err(structural!("all actions must be {d}x{d}"));
    }
    for (i, ti) in actions.iter().enumerate() {
        for tj in &actions[i + 1..] {
            let scale = ti.max_abs() * tj.max_abs();
            if !ti.commutator(tj).is_negligible(scale, 1e-10) {
                return Err(domain!("generators do not commute"));
            }
        }
    }
    let big_n = actions.len();
    let shifted: Vec<Matrix<S>> = actions.iter().map(|t| t.sub(&Matrix::identity(d))).collect();

    let mut blocks = Vec::new();
    for i in 0..big_n {
        for j in i + 1..big_n {
            let mut row = Matrix::zeros(d, big_n * d);
            row.put_block(0, i * d, &shifted[j]);
            row.put_block(0, j * d, &shifted[i].scale(&-S::one()));
            blocks.push(row);
        }
    }
    let z1 = if blocks.is_empty() { big_n * d } else { big_n * d - Matrix::vstack(&blocks)?.rank() };
    let b1 = Matrix::vstack(&shifted)?.rank();
    if b1 > z1 {
        return Err(internal!("coboundaries ({b1}) exceed cocycles ({z1})"));
    }
    Ok(CohomologyDims { z1, b1, h1: z1 - b1 })
}

/// `H¹(ℤᴺ, Ad ρ)` for `ρ` given by commuting group elements.
pub fn cohomology_dims<S: Scalar>(g: &GroupSpec, generators: &[Matrix<S>]) -> Result<CohomologyDims> {
    let basis = lie_basis(g);
    for (i, a) in generators.iter().enumerate() {
        for b in &generators[i + 1..] {
            let scale = a.max_abs() * b.max_abs();
            if !a.commutator(b).is_negligible(scale, 1e-10) {
                return Err(domain!("generators do not commute"));
            }
        }
    }
    let ads = generators.iter().map(|a| ad_operator(&basis, a)).collect::<Result<Vec<_>>>()?;
    cohomology_of_action(&ads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::models::{determinant, in_algebra, torus_matrix};
    use crate::scalar::rat;

    fn spec(f: Family, n: usize) -> GroupSpec {
        GroupSpec::new(f, n, 1).unwrap()
    }

    fn q(n: i64, d: i64) -> GaussScalar {
        GaussScalar::from_ratio(n, d)
    }

    #[test]
    fn killing_examples() {
        assert_eq!(killing_ratio(&spec(Family::SL, 2)).unwrap(), rat(4, 1));
        assert_eq!(killing_ratio(&spec(Family::SOodd, 2)).unwrap(), rat(3, 1));
        assert_eq!(killing_ratio(&spec(Family::Sp, 1)).unwrap(), rat(4, 1));
        assert!(killing_ratio(&spec(Family::GL, 2)).is_err());
        assert!(killing_ratio(&spec(Family::SOeven, 1)).is_err());
    }

    #[test]
    fn variation_examples() {
        let sl = spec(Family::SL, 2);
        let a = Matrix::diagonal(&[q(2, 1), q(1, 2)]);
        let f = variation(&sl, &a, &rat(1, 1)).unwrap();
        assert_eq!(f, Matrix::diagonal(&[q(3, 4), q(-3, 4)]));
        for fam in Family::ALL {
            let g = spec(fam, 2);
            let id = Matrix::<GaussScalar>::identity(g.matrix_size());
            let f = variation(&g, &id, &rat(1, 1)).unwrap();
            if fam != Family::GL {
                assert!(f.is_negligible(0.0, 0.0), "{g}");
                assert!(in_algebra(&g, &f));
            }
        }
        assert!(variation(&sl, &a, &rat(0, 1)).is_err());
    }

    #[test]
    fn ad_operator_examples() {
        let g = spec(Family::SL, 2);
        let basis = lie_basis(&g);
        let id = Matrix::<GaussScalar>::identity(2);
        assert_eq!(ad_operator(&basis, &id).unwrap(), Matrix::identity(3));
        let t = q(3, 1);
        let a = torus_matrix(&g, &[t.clone(), t.inv()]).unwrap();
        let ad = ad_operator(&basis, &a).unwrap();
        // Basis order E_12, E_21, H: diagonal t², t⁻², 1.
        assert_eq!(ad, Matrix::diagonal(&[q(9, 1), q(1, 9), q(1, 1)]));
        assert_eq!(determinant(&ad), q(1, 1));
    }

    #[test]
    fn cohomology_examples() {
        let g = spec(Family::SL, 2);
        let id = Matrix::<GaussScalar>::identity(2);
        let trivial = cohomology_dims(&g, &[id.clone(), id]).unwrap();
        assert_eq!(trivial, CohomologyDims { z1: 6, b1: 0, h1: 6 });
        let a = torus_matrix(&g, &[q(2, 1), q(1, 2)]).unwrap();
        let b = torus_matrix(&g, &[q(3, 1), q(1, 3)]).unwrap();
        assert_eq!(cohomology_dims(&g, &[a, b]).unwrap(), CohomologyDims { z1: 4, b1: 2, h1: 2 });
        // Nontrivial characters of ℤ have no cohomology.
        for psi in [2, 3] {
            let dims = cohomology_of_action(&[Matrix::diagonal(&[q(psi, 1)])]).unwrap();
            assert_eq!(dims.h1, 0);
        }
        let x = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        let y = Matrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]]).unwrap();
        assert!(cohomology_dims(&g, &[x, y]).is_err());
    }
}
