//! Poisson brackets computed numerically from the symplectic form
//! `ω′((v₁,w₁),(v₂,w₂)) = 𝔅(v₁,w₂) − 𝔅(v₂,w₁)` on `𝔱 × 𝔱`, with `𝔅 = c·Tr`.
//!
//! Points are written in eigenvalue coordinates `(x_{i1}, x_{i2})`; tangent
//! vectors are logarithmic, so the differential of `f` is read off from the
//! log-derivatives `x_{ij} ∂f/∂x_{ij}`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{domain, internal, structural, Result};
use crate::group::{Family, GroupSpec};
use crate::laurent::LaurentPoly;
use crate::lie::models::cartan_generator;
use crate::point::TorusPoint;
use crate::scalar::{rat_to_f64, GaussScalar};

/// Global sign of the bracket dual to `ω′`, fixed against the SL(2) trace
/// formula at `(s, t) = (2, 3)`; see the calibration test below.
pub const ORIENTATION: f64 = 1.0;

/// `𝔅` restricted to the Cartan subalgebra in eigenvalue coordinates:
/// `𝔅(u, v) = c · k · Σ u_i v_i` on `P(u), P(v)`, where `P` is the traceless
/// projection for SL(n) and the identity otherwise.
#[derive(Debug, Clone)]
pub struct CartanMetric {
    group: GroupSpec,
    c: BigRational,
    multiplier: BigRational,
}

pub fn cartan_metric(g: &GroupSpec, c: &BigRational) -> Result<CartanMetric> {
    if c.is_zero() {
        return Err(domain!("c must be nonzero"));
    }
    let hs: Vec<_> = (0..g.rank).map(|k| cartan_generator(g, k)).collect();
    let k = hs[0].trace_product(&hs[0]);
    for (a, ha) in hs.iter().enumerate() {
        for (b, hb) in hs.iter().enumerate() {
            let expected = if a == b { k.clone() } else { GaussScalar::zero() };
            if ha.trace_product(hb) != expected {
                return Err(internal!("Cartan trace form of {g} is not a multiple of the identity"));
            }
        }
    }
    if !k.is_real() || k.re.is_zero() {
        return Err(internal!("degenerate Cartan trace form for {g}"));
    }
    Ok(CartanMetric { group: *g, c: c.clone(), multiplier: k.re })
}

impl CartanMetric {
    pub fn multiplier(&self) -> &BigRational {
        &self.multiplier
    }

    fn ck(&self) -> f64 {
        rat_to_f64(&(&self.c * &self.multiplier))
    }

    pub fn project(&self, u: &[Complex64]) -> Vec<Complex64> {
        if self.group.family != Family::SL {
            return u.to_vec();
        }
        let mean = u.iter().sum::<Complex64>() / u.len() as f64;
        u.iter().map(|x| x - mean).collect()
    }

    /// `𝔅(u, v)`; bilinear, no conjugation.
    pub fn form(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let (pu, pv) = (self.project(u), self.project(v));
        pu.iter().zip(&pv).map(|(a, b)| a * b).sum::<Complex64>() * self.ck()
    }

    /// The `𝔅`-gradient of a covector `df` on `𝔱`: `𝔅(∇, ·) = df`.
    pub fn gradient(&self, df: &[Complex64]) -> Vec<Complex64> {
        let ck = self.ck();
        self.project(df).into_iter().map(|x| x / ck).collect()
    }
}

/// A tangent vector `(v, w) ∈ 𝔱 × 𝔱`.
pub type CartanPair = (Vec<Complex64>, Vec<Complex64>);

pub fn omega_prime(metric: &CartanMetric, x: &CartanPair, y: &CartanPair) -> Complex64 {
    metric.form(&x.0, &y.1) - metric.form(&y.0, &x.1)
}

/// Log-derivatives of `f` along both torus factors at `p`.
pub fn differential(f: &LaurentPoly, p: &TorusPoint<Complex64>) -> Result<CartanPair> {
    let n = f.group().rank;
    let mut du = Vec::with_capacity(n);
    let mut dw = Vec::with_capacity(n);
    for i in 0..n {
        du.push(f.partial(i, 0).eval(p)?);
        dw.push(f.partial(i, 1).eval(p)?);
    }
    Ok((du, dw))
}

/// Solve `ω′(X_f, ·) = df`: `X_f = (∇_w f, −∇_u f)`.
pub fn hamiltonian_field(metric: &CartanMetric, df: &CartanPair) -> CartanPair {
    let a = metric.gradient(&df.1);
    let b = metric.gradient(&df.0).into_iter().map(|x| -x).collect();
    (a, b)
}

/// `{f, h}(p) = ω′(X_f, X_h)` (times [`ORIENTATION`]).
pub fn numeric_bracket(
    f: &LaurentPoly,
    h: &LaurentPoly,
    p: &TorusPoint<Complex64>,
    c: &BigRational,
) -> Result<Complex64> {
    let g = f.group();
    if h.group() != g {
        return Err(structural!("bracket of functions on {g} and {}", h.group()));
    }
    if g.factors != 2 {
        return Err(structural!("the symplectic form lives on Z^2 character varieties"));
    }
    let metric = cartan_metric(g, c)?;
    let xf = hamiltonian_field(&metric, &differential(f, p)?);
    let xh = hamiltonian_field(&metric, &differential(h, p)?);
    Ok(omega_prime(&metric, &xf, &xh) * ORIENTATION)
}
