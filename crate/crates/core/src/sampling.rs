//! Seeded random inputs: torus points, group elements and Weyl invariants.

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exponent::ExponentMatrix;
use crate::group::{Family, GroupSpec};
use crate::laurent::LaurentPoly;
use crate::lie::matrix::Matrix;
use crate::lie::models::{is_generic, lie_basis, torus_matrix};
use crate::point::TorusPoint;
use crate::scalar::GaussScalar;
use crate::weyl::orbit_sum;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational in `[−5, 5]` with denominator at most 4.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    loop {
        let num: i64 = rng.random_range(-20..=20);
        let den: i64 = rng.random_range(1..=4);
        if num != 0 && num.abs() <= 5 * den {
            return BigRational::new(num.into(), den.into());
        }
    }
}

/// Eigenvalue parameters of one torus element; SL columns are completed to product 1.
pub fn random_eigenvalues<R: Rng + ?Sized>(g: &GroupSpec, rng: &mut R) -> Vec<GaussScalar> {
    let mut x: Vec<GaussScalar> = (0..g.rank).map(|_| GaussScalar::real(random_rational(rng))).collect();
    if g.family == Family::SL {
        let prod = x[..g.rank - 1].iter().fold(GaussScalar::one(), |a, b| &a * b);
        x[g.rank - 1] = prod.inv();
    }
    x
}

/// A torus point whose columns jointly avoid every root hyperplane.
pub fn random_generic_point<R: Rng + ?Sized>(g: &GroupSpec, rng: &mut R) -> TorusPoint<GaussScalar> {
    loop {
        let columns: Vec<Vec<GaussScalar>> = (0..g.factors).map(|_| random_eigenvalues(g, rng)).collect();
        if is_generic(g, &columns, 0.0) {
            return TorusPoint::new(*g, columns).expect("sampled coordinates are valid");
        }
    }
}

/// Small random element of the Lie algebra.
pub fn random_lie_element<R: Rng + ?Sized>(g: &GroupSpec, rng: &mut R) -> Matrix<GaussScalar> {
    let basis = lie_basis(g);
    let coords: Vec<GaussScalar> = (0..basis.dim())
        .map(|_| GaussScalar::from_ratio(rng.random_range(-2..=2), rng.random_range(1..=3)))
        .collect();
    basis.combine(&coords)
}

/// Random exact group element: a Cayley transform `(I − X)(I + X)⁻¹` for Sp/SO,
/// a product of elementary unipotents for SL, times a torus element for GL.
pub fn random_group_element<R: Rng + ?Sized>(g: &GroupSpec, rng: &mut R) -> Matrix<GaussScalar> {
    let m = g.matrix_size();
    let id = Matrix::<GaussScalar>::identity(m);
    match g.family {
        Family::Sp | Family::SOodd | Family::SOeven => loop {
            let x = random_lie_element(g, rng);
            if let Ok(inv) = id.add(&x).inverse() {
                return id.sub(&x).mul(&inv);
            }
        },
        Family::SL | Family::GL => {
            let mut a = id.clone();
            if m > 1 {
                for _ in 0..2 * m {
                    let i = rng.random_range(0..m);
                    let j = (i + rng.random_range(1..m)) % m;
                    let mut u = id.clone();
                    u.set(i, j, GaussScalar::real(random_rational(rng)));
                    a = a.mul(&u);
                }
            }
            if g.family == Family::GL {
                let t = torus_matrix(g, &random_eigenvalues(g, rng)).expect("nonzero eigenvalues");
                a = a.mul(&t);
            }
            a
        }
    }
}

/// `C A C⁻¹` for a random group element `C`.
pub fn random_conjugate<R: Rng + ?Sized>(
    g: &GroupSpec,
    a: &Matrix<GaussScalar>,
    rng: &mut R,
) -> Result<Matrix<GaussScalar>> {
    let c = random_group_element(g, rng);
    Ok(c.mul(a).mul(&c.inverse()?))
}

/// Integer exponent matrix with entries in `[−bound, bound]`; each row is
/// zero with probability `zero_prob`.
pub fn random_exponents<R: Rng + ?Sized>(g: &GroupSpec, bound: i64, zero_prob: f64, rng: &mut R) -> ExponentMatrix {
    let rows: Vec<Vec<i64>> = (0..g.rank)
        .map(|_| {
            if rng.random_bool(zero_prob) {
                vec![0; g.factors]
            } else {
                (0..g.factors).map(|_| rng.random_range(-bound..=bound)).collect()
            }
        })
        .collect();
    ExponentMatrix::from_rows(&rows).expect("rectangular rows")
}

/// Linear combination of up to `max_summands` Weyl orbit sums with random
/// Gaussian-rational coefficients.
pub fn random_invariant<R: Rng + ?Sized>(
    g: &GroupSpec,
    bound: i64,
    max_summands: usize,
    rng: &mut R,
) -> Result<LaurentPoly> {
    let mut f = LaurentPoly::zero(*g);
    for _ in 0..rng.random_range(1..=max_summands) {
        let m = random_exponents(g, bound, 0.25, rng);
        let c = GaussScalar::new(random_rational(rng), BigRational::new(rng.random_range(-3..=3).into(), 1.into()));
        f = f.add(&orbit_sum(&m, g)?.scale(&c))?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::models::in_group;
    use crate::weyl::is_invariant;

    #[test]
    fn seeds_are_reproducible() {
        let g = GroupSpec::new(Family::SOeven, 3, 2).unwrap();
        let a = random_invariant(&g, 3, 4, &mut seeded(7)).unwrap();
        let b = random_invariant(&g, 3, 4, &mut seeded(7)).unwrap();
        assert_eq!(a, b);
        assert!(is_invariant(&a));
    }

    #[test]
    fn rationals_in_range() {
        let mut rng = seeded(1);
        for _ in 0..200 {
            let r = random_rational(&mut rng);
            assert!(r != BigRational::from_integer(0.into()));
            assert!(r.numer().magnitude() <= &(r.denom().magnitude() * 5u32));
        }
    }

    #[test]
    fn group_elements_are_in_the_group() {
        let mut rng = seeded(3);
        for f in Family::ALL {
            for n in 1..=3 {
                let g = GroupSpec::new(f, n, 1).unwrap();
                for _ in 0..3 {
                    assert!(in_group(&g, &random_group_element(&g, &mut rng)), "{g}");
                }
            }
        }
    }

    #[test]
    fn sl_points_have_unit_columns() {
        let g = GroupSpec::new(Family::SL, 3, 2).unwrap();
        let p = random_generic_point(&g, &mut seeded(5));
        for col in p.columns() {
            assert_eq!(col.iter().fold(GaussScalar::one(), |a, b| &a * b), GaussScalar::one());
        }
    }
}
