//! Coefficient rings.
//!
//! Every tensor in the crate is generic over a [`Ring`]. Exact work uses
//! [`Rational`] (arbitrary precision) or [`crate::poly::Poly`] over it; `f64`
//! is supported for quick floating-point experiments but equality tests on it
//! are only as good as IEEE arithmetic.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// A commutative ring with unit whose elements can be compared exactly.
///
/// Structure constants of a [`crate::Frame`] are always rational; they enter
/// other rings through [`Ring::from_rational`].
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl Ring for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}
impl Field for Rational {}

impl Ring for f64 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}
impl Field for f64 {}

impl Ring for f32 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }
}
impl Field for f32 {}

/// `n/d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p"`, `"-p"`, `"p/q"`. A zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator `{num}`"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator `{den}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(Rational::new(num, den))
}

/// Smallest positive integer multiple of a rational vector, as integers.
/// The returned vector is a positive rescaling of the input.
pub fn integer_ray(point: &[Rational]) -> Vec<BigInt> {
    let lcm = point
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = point
        .iter()
        .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_rejects_zero_denominator() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integer_ray_is_primitive_positive_multiple() {
        let ray = integer_ray(&[rat(1, 2), rat(-3, 4), int(0)]);
        assert_eq!(ray, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
