//! Scalar abstraction shared by the floating-point and exact-rational paths.
//!
//! Every closed-form expression in this crate is written once against
//! [`Scalar`], then evaluated either in `f64` for sweeps or in
//! [`BigRational`] when a polynomial identity has to hold bit-for-bit.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive, Zero};

/// Field-like number type the analytic formulas are evaluated in.
pub trait Scalar: Num + Clone + Debug + PartialOrd + Neg<Output = Self> {
    /// Exact `num / den`; `den` must be non-zero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_biguint(n: &BigUint) -> Self;

    fn to_f64(&self) -> f64;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn from_small_ratio(r: &Ratio<i64>) -> Self {
        Self::from_ratio(*r.numer(), *r.denom())
    }

    /// Integer power; `x^0 = 1` including `0^0`.
    fn powu(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }

    /// Integer power allowing negative exponents.
    fn powi(&self, exp: i32) -> Self {
        if exp >= 0 {
            self.powu(exp as u32)
        } else {
            Self::one() / self.powu(exp.unsigned_abs())
        }
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_biguint(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn powu(&self, exp: u32) -> Self {
        f64::powi(*self, exp as i32)
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn from_biguint(n: &BigUint) -> Self {
        n.to_f32().unwrap_or(f32::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn powu(&self, exp: u32) -> Self {
        f32::powi(*self, exp as i32)
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_biguint(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(n.clone()))
    }

    fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles huge numerators/denominators without overflow.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Parse `"a/b"`, `"a"` or a decimal like `"0.3"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10u32), frac.len());
        let r = BigRational::new(n, d);
        return Some(if negative { -r } else { r });
    }
    let n: BigInt = text.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Convenience for tests and CLI code: `1 - x` without repeating clones.
pub fn one_minus<S: Scalar>(x: &S) -> S {
    S::one() - x.clone()
}
