//! Exact arithmetic plumbing shared by the counting engines: a small value
//! trait implemented for big integers, big rationals and a u128 fast path,
//! plus robust float conversions for report output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ring operations the profile/elimination engines need. Division is exact
/// where it appears (the doubled-edge correction); the u128 impl checks all
/// arithmetic for overflow since callers pick it only under a proven bound.
pub trait CountValue: Clone + PartialEq + Send + Sync + Zero + One {
    fn add_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn pow_usize(&self, k: usize) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn from_usize(x: usize) -> Self;
}

impl CountValue for BigInt {
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn pow_usize(&self, k: usize) -> Self {
        self.pow(k as u32)
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, other);
        debug_assert!(r.is_zero(), "inexact integer division");
        q
    }
    fn from_usize(x: usize) -> Self {
        BigInt::from(x)
    }
}

impl CountValue for BigRational {
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn pow_usize(&self, k: usize) -> Self {
        self.pow(k as i32)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn from_usize(x: usize) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
}

impl CountValue for u128 {
    fn add_ref(&mut self, other: &Self) {
        *self = self.checked_add(*other).expect("u128 profile overflow");
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("u128 profile overflow")
    }
    fn pow_usize(&self, k: usize) -> Self {
        let mut acc: u128 = 1;
        for _ in 0..k {
            acc = acc.checked_mul(*self).expect("u128 profile overflow");
        }
        acc
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(self % other == 0);
        self / other
    }
    fn from_usize(x: usize) -> Self {
        x as u128
    }
}

/// Natural log of a positive big integer, stable for any bit length.
pub fn log_big_int(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 900 {
        return x.to_f64().expect("fits f64 range").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("top 64 bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational; `-inf` for zero.
pub fn log_rational(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    debug_assert!(r.is_positive());
    log_big_int(r.numer()) - log_big_int(r.denom())
}

/// Rounds a rational to f64, robust to huge numerators/denominators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * log_rational(&r.abs()).exp()
}

/// JSON form of an exact rational: reduced numerator/denominator as decimal
/// strings plus a binary64 rendering.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
    pub value: f64,
}

impl RationalJson {
    pub fn from_rational(r: &BigRational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            value: rational_to_f64(r),
        }
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        let num: BigInt = self
            .num
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad numerator {:?}", self.num)))?;
        let den: BigInt = self
            .den
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad denominator {:?}", self.den)))?;
        if den.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

/// Parses "p/q", "p" or a plain decimal like "0.25" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let neg = int_part.starts_with('-');
        let i: BigInt = int_part.parse().map_err(|_| bad())?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = BigRational::new(f, scale);
        let whole = BigRational::from_integer(i.abs());
        let total = whole + frac;
        return Ok(if neg { -total } else { total });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}
