//! Matrix models of the classical groups and their Lie algebras.
//!
//! * GL(n), SL(n): `n × n` matrices; the SL Cartan part uses `H_k = E_kk − E_{k+1,k+1}`.
//! * Sp(n): `2n × 2n` with `XᵀJ + JX = 0`, `J = [[0, I], [−I, 0]]`.
//! * SO(m): antisymmetric `m × m` matrices. The torus is built from the
//!   blocks `½[[x + x⁻¹, i(x − x⁻¹)], [−i(x − x⁻¹), x + x⁻¹]]`, with a
//!   trailing `1` in odd dimension.

use crate::error::{domain, structural, Result};
use crate::group::{Family, GroupSpec};
use crate::lie::matrix::Matrix;
use crate::scalar::{GaussScalar, Scalar};

/// Tolerance for group and algebra membership tests on float matrices.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// A basis of the Lie algebra together with coordinate extraction.
#[derive(Debug, Clone)]
pub struct LieBasis {
    group: GroupSpec,
    basis: Vec<Matrix<GaussScalar>>,
}

fn symplectic_form<S: Scalar>(n: usize) -> Matrix<S> {
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            S::one()
        } else if i == j + n {
            -S::one()
        } else {
            S::zero()
        }
    })
}

pub fn lie_basis(g: &GroupSpec) -> LieBasis {
    let n = g.rank;
    let m = g.matrix_size();
    let e = |i, j| Matrix::<GaussScalar>::unit(m, i, j);
    let mut basis = Vec::with_capacity(g.lie_dim());
    match g.family {
        Family::GL => {
            for i in 0..n {
                for j in 0..n {
                    basis.push(e(i, j));
                }
            }
        }
        Family::SL => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        basis.push(e(i, j));
                    }
                }
            }
            for k in 0..n - 1 {
                basis.push(e(k, k).sub(&e(k + 1, k + 1)));
            }
        }
        Family::Sp => {
            for i in 0..n {
                for j in 0..n {
                    basis.push(e(i, j).sub(&e(n + j, n + i)));
                }
            }
            for i in 0..n {
                for j in i..n {
                    let b = if i == j { e(i, n + i) } else { e(i, n + j).add(&e(j, n + i)) };
                    let c = if i == j { e(n + i, i) } else { e(n + i, j).add(&e(n + j, i)) };
                    basis.push(b);
                    basis.push(c);
                }
            }
        }
        Family::SOodd | Family::SOeven => {
            for i in 0..m {
                for j in i + 1..m {
                    basis.push(e(i, j).sub(&e(j, i)));
                }
            }
        }
    }
    LieBasis { group: *g, basis }
}

impl LieBasis {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[Matrix<GaussScalar>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The basis converted to another scalar type.
    pub fn elements_as<S: Scalar>(&self) -> Vec<Matrix<S>> {
        self.basis.iter().map(|b| b.map(S::from_gauss)).collect()
    }

    /// Coordinates of an algebra element in this basis (membership not checked).
    pub fn coordinates<S: Scalar>(&self, x: &Matrix<S>) -> Vec<S> {
        let n = self.group.rank;
        let m = self.group.matrix_size();
        let at = |i: usize, j: usize| x.get(i, j).clone();
        let mut out = Vec::with_capacity(self.basis.len());
        match self.group.family {
            Family::GL => {
                for i in 0..n {
                    for j in 0..n {
                        out.push(at(i, j));
                    }
                }
            }
            Family::SL => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            out.push(at(i, j));
                        }
                    }
                }
                let mut h = S::zero();
                for k in 0..n - 1 {
                    h = h + at(k, k);
                    out.push(h.clone());
                }
            }
            Family::Sp => {
                for i in 0..n {
                    for j in 0..n {
                        out.push(at(i, j));
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        out.push(at(i, n + j));
                        out.push(at(n + i, j));
                    }
                }
            }
            Family::SOodd | Family::SOeven => {
                for i in 0..m {
                    for j in i + 1..m {
                        out.push(at(i, j));
                    }
                }
            }
        }
        out
    }

    pub fn combine<S: Scalar>(&self, coords: &[S]) -> Matrix<S> {
        let m = self.group.matrix_size();
        let mut out = Matrix::zeros(m, m);
        for (b, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                out = out.add(&b.map(S::from_gauss).scale(c));
            }
        }
        out
    }
}

/// Residual of the defining linear condition of 𝔤, as a matrix.
fn algebra_residual<S: Scalar>(g: &GroupSpec, x: &Matrix<S>) -> Matrix<S> {
    match g.family {
        Family::GL => Matrix::zeros(1, 1),
        Family::SL => Matrix::diagonal(&[x.trace()]),
        Family::Sp => {
            let j = symplectic_form::<S>(g.rank);
            x.transpose().mul(&j).add(&j.mul(x))
        }
        Family::SOodd | Family::SOeven => x.transpose().add(x),
    }
}

pub fn in_algebra<S: Scalar>(g: &GroupSpec, x: &Matrix<S>) -> bool {
    let m = g.matrix_size();
    x.rows() == m && x.cols() == m && algebra_residual(g, x).is_negligible(x.max_abs(), MEMBERSHIP_TOL)
}

/// Group membership: determinant-free checks for Sp/SO (`AᵀJA = J`, `AᵀA = I`),
/// invertibility for GL, and unit determinant for SL.
pub fn in_group<S: Scalar>(g: &GroupSpec, a: &Matrix<S>) -> bool {
    let m = g.matrix_size();
    if a.rows() != m || a.cols() != m {
        return false;
    }
    let scale = a.max_abs().powi(2);
    match g.family {
        Family::GL => a.inverse().is_ok(),
        Family::SL => (determinant(a) - S::one()).is_negligible(scale, MEMBERSHIP_TOL),
        Family::Sp => {
            let j = symplectic_form::<S>(g.rank);
            a.transpose().mul(&j).mul(a).sub(&j).is_negligible(scale, MEMBERSHIP_TOL)
        }
        Family::SOodd | Family::SOeven => {
            a.transpose().mul(a).sub(&Matrix::identity(m)).is_negligible(scale, MEMBERSHIP_TOL)
                && (determinant(a) - S::one()).is_negligible(scale, MEMBERSHIP_TOL)
        }
    }
}

/// Determinant by elimination.
pub fn determinant<S: Scalar>(a: &Matrix<S>) -> S {
    let n = a.rows();
    let mut m = a.clone();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = (col..n).max_by(|&x, &y| m.get(x, col).magnitude().total_cmp(&m.get(y, col).magnitude())) else {
            return S::zero();
        };
        if m.get(p, col).is_zero() {
            return S::zero();
        }
        if p != col {
            for j in 0..n {
                let (u, v) = (m.get(col, j).clone(), m.get(p, j).clone());
                m.set(col, j, v);
                m.set(p, j, u);
            }
            det = -det;
        }
        let piv = m.get(col, col).clone();
        det = det * piv.clone();
        for r in col + 1..n {
            let f = m.get(r, col).clone() / piv.clone();
            if !f.is_zero() {
                for j in col..n {
                    let v = m.get(r, j).clone() - f.clone() * m.get(col, j).clone();
                    m.set(r, j, v);
                }
            }
        }
    }
    det
}

/// Torus element with eigenvalue parameters `x_1, ..., x_n`.
pub fn torus_matrix<S: Scalar>(g: &GroupSpec, x: &[S]) -> Result<Matrix<S>> {
    let n = g.rank;
    if x.len() != n {
        return Err(structural!("{g} needs {n} eigenvalue parameters, got {}", x.len()));
    }
    if x.iter().any(Scalar::is_zero) {
        return Err(domain!("eigenvalue parameters must be nonzero"));
    }
    match g.family {
        Family::GL => Ok(Matrix::diagonal(x)),
        Family::SL => {
            let prod = x.iter().cloned().fold(S::one(), |a, b| a * b);
            if !(prod - S::one()).is_negligible(1.0, 1e-9) {
                return Err(domain!("SL torus parameters must multiply to 1"));
            }
            Ok(Matrix::diagonal(x))
        }
        Family::Sp => {
            let diag: Vec<S> = x.iter().cloned().chain(x.iter().map(Scalar::inv)).collect();
            Ok(Matrix::diagonal(&diag))
        }
        Family::SOodd | Family::SOeven => {
            let m = g.matrix_size();
            let mut a = Matrix::zeros(m, m);
            let half = S::from_gauss(&GaussScalar::from_ratio(1, 2));
            let i = S::imag_unit();
            for (j, xj) in x.iter().enumerate() {
                let plus = (xj.clone() + xj.inv()) * half.clone();
                let minus = (xj.clone() - xj.inv()) * half.clone() * i.clone();
                a.set(2 * j, 2 * j, plus.clone());
                a.set(2 * j + 1, 2 * j + 1, plus);
                a.set(2 * j, 2 * j + 1, minus.clone());
                a.set(2 * j + 1, 2 * j, -minus);
            }
            if g.family == Family::SOodd {
                a.set(m - 1, m - 1, S::one());
            }
            Ok(a)
        }
    }
}

/// Derivative of [`torus_matrix`] along `log x_k` at the identity.
pub fn cartan_generator(g: &GroupSpec, k: usize) -> Matrix<GaussScalar> {
    let n = g.rank;
    let m = g.matrix_size();
    match g.family {
        Family::GL | Family::SL => Matrix::unit(m, k, k),
        Family::Sp => Matrix::unit(m, k, k).sub(&Matrix::unit(m, n + k, n + k)),
        Family::SOodd | Family::SOeven => {
            let i = GaussScalar::i();
            let mut h = Matrix::zeros(m, m);
            h.set(2 * k, 2 * k + 1, i.clone());
            h.set(2 * k + 1, 2 * k, -i);
            h
        }
    }
}

/// Values of all roots at a torus point with parameters `x`.
pub fn root_values<S: Scalar>(g: &GroupSpec, x: &[S]) -> Vec<S> {
    let n = x.len();
    let mut out = Vec::new();
    for i in 0..n {
        for k in 0..n {
            if i != k {
                out.push(x[i].clone() / x[k].clone());
            }
        }
    }
    if g.family.has_signs() {
        for i in 0..n {
            for k in i + 1..n {
                let p = x[i].clone() * x[k].clone();
                out.push(p.inv());
                out.push(p);
            }
        }
        for xi in x {
            match g.family {
                Family::Sp => {
                    let sq = xi.clone() * xi.clone();
                    out.push(sq.inv());
                    out.push(sq);
                }
                Family::SOodd => {
                    out.push(xi.inv());
                    out.push(xi.clone());
                }
                _ => {}
            }
        }
    }
    out
}

/// Every root is nontrivial on at least one of the given torus elements.
pub fn is_generic<S: Scalar>(g: &GroupSpec, columns: &[Vec<S>], tol: f64) -> bool {
    let values: Vec<Vec<S>> = columns.iter().map(|x| root_values(g, x)).collect();
    let count = values.first().map_or(0, Vec::len);
    (0..count).all(|r| values.iter().any(|v| !(v[r].clone() - S::one()).is_negligible(1.0, tol)))
}
