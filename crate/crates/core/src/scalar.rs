//! Exact Gaussian rationals and the scalar abstraction shared by exact and
//! floating-point code paths.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Build a `BigRational` from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators and denominators: divide in floating point after scaling.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parse `"a"` or `"a/b"` with an optional sign.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("invalid rational `{s}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// A complex number `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussScalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussScalar { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(rat(num, den))
    }

    pub fn zero() -> Self {
        GaussScalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn i() -> Self {
        GaussScalar { re: BigRational::zero(), im: BigRational::one() }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussScalar { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussScalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero GaussScalar")
    }

    pub fn pow(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Zero for GaussScalar {
    fn zero() -> Self {
        GaussScalar::zero()
    }
    fn is_zero(&self) -> bool {
        GaussScalar::is_zero(self)
    }
}

impl One for GaussScalar {
    fn one() -> Self {
        GaussScalar::one()
    }
}

impl From<i64> for GaussScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for GaussScalar {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

impl<'a> Add<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn add(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn sub(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn mul(self, o: &GaussScalar) -> GaussScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussScalar::real(&self.re * &o.re);
        }
        GaussScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn div(self, o: &GaussScalar) -> GaussScalar {
        if o.im.is_zero() {
            return GaussScalar { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: GaussScalar) -> GaussScalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: &GaussScalar) -> GaussScalar { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, o: &GaussScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, o: &GaussScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, o: &GaussScalar) {
        *self = &*self * o;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats as `a/b+c/di`; a vanishing part is omitted (`0` for zero).
impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussScalar {
    type Err = Error;

    /// Accepts `a`, `a/b`, `ci`, `c/di`, `i`, `-i`, `a/b+c/di`, `a-i`, and so on.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        // Tolerate the typographic minus sign.
        let t = t.replace('\u{2212}', "-");
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussScalar::real(parse_rational(&t)?));
        };
        // Split off the real part at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        let re = if re_part.is_empty() { BigRational::zero() } else { parse_rational(re_part)? };
        Ok(GaussScalar { re, im })
    }
}

/// Field operations needed by the dense matrix code, implemented for exact
/// Gaussian rationals and for double-precision complex numbers.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when equality tests are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_gauss(g: &GaussScalar) -> Self;
    fn is_zero(&self) -> bool;
    /// Pivot selection weight; any positive value is fine in exact mode.
    fn magnitude(&self) -> f64;
    /// Zero for exact scalars; below `tol * max(1, scale)` for floats.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool;
    fn to_complex(&self) -> Complex64;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Scalar for GaussScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussScalar::zero()
    }
    fn one() -> Self {
        GaussScalar::one()
    }
    fn imag_unit() -> Self {
        GaussScalar::i()
    }
    fn from_int(v: i64) -> Self {
        GaussScalar::from_int(v)
    }
    fn from_gauss(g: &GaussScalar) -> Self {
        g.clone()
    }
    fn is_zero(&self) -> bool {
        GaussScalar::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        if GaussScalar::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn is_negligible(&self, _scale: f64, _tol: f64) -> bool {
        GaussScalar::is_zero(self)
    }
    fn to_complex(&self) -> Complex64 {
        GaussScalar::to_complex(self)
    }
    fn inv(&self) -> Self {
        GaussScalar::inv(self)
    }
    fn powi(&self, exp: i64) -> Self {
        self.pow(exp)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_int(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_gauss(g: &GaussScalar) -> Self {
        g.to_complex()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        self.norm() <= tol * scale.max(1.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn inv(&self) -> Self {
        Complex64::new(1.0, 0.0) / self
    }
    fn powi(&self, exp: i64) -> Self {
        Complex64::powi(self, exp as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussScalar {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trips_through_parse() {
        for s in ["0", "1", "-2", "3/2", "i", "-1/2i", "3/2+1/2i", "-1-7/3i", "5i"] {
            let v = g(s);
            assert_eq!(g(&v.to_string()), v, "{s}");
        }
        assert_eq!(g("3/2+1/2i").to_string(), "3/2+1/2i");
        assert_eq!(g("i"), GaussScalar::i());
        assert_eq!(g("-i"), -GaussScalar::i());
        assert_eq!(g("2-i"), GaussScalar::new(rat(2, 1), rat(-1, 1)));
        assert_eq!(g("\u{2212}2"), GaussScalar::from_int(-2));
    }

    #[test]
    fn rejects_garbage() {
        assert!("abc".parse::<GaussScalar>().is_err());
        assert!("1/0".parse::<GaussScalar>().is_err());
        assert!("".parse::<GaussScalar>().is_err());
    }

    #[test]
    fn lowest_terms_and_positive_denominators() {
        let v = GaussScalar::new(rat(4, -6), rat(10, 4));
        assert_eq!(v.re.denom(), &BigInt::from(3));
        assert_eq!(v.re.numer(), &BigInt::from(-2));
        assert_eq!(v.im.denom(), &BigInt::from(2));
    }

    #[test]
    fn field_arithmetic() {
        let a = g("1+2i");
        let b = g("3-i");
        assert_eq!(&a * &b, g("5+5i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(GaussScalar::i_pow(2), GaussScalar::from_int(-1));
        assert_eq!(GaussScalar::i_pow(-1), -GaussScalar::i());
        assert_eq!(g("2").pow(-2), g("1/4"));
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }
}
