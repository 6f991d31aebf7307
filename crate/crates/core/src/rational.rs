//! Exact rational scalars.
//!
//! All quantities in the calculus are exact: rationals are arbitrary-precision
//! fractions kept in lowest terms with positive denominator. Rendering is
//! `p/q`, or just `p` when the denominator is one, and parsing accepts the
//! same grammar.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num/den` as an exact rational. Panics if `den == 0`; use [`parse_rational`]
/// for fallible construction from text.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// (-1)^k for any signed k.
pub fn neg_one_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Parses `p`, `-p`, `p/q` with optional surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational: {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational: {text:?}")))?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// The integer value of an exact integer rational, if it is one and fits i64.
pub fn as_integer(value: &Rational) -> Option<i64> {
    if value.is_integer() {
        i64::try_from(value.to_integer()).ok()
    } else {
        None
    }
}

pub fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}

pub fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(" -7 ").unwrap(), rat_int(-7));
        assert_eq!(parse_rational("6/4").unwrap().to_string(), "3/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(rat(1, -2).to_string(), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(parse_rational("1/0"), Err(Error::ZeroDenominator));
    }

    #[test]
    fn sign_power() {
        assert_eq!(neg_one_pow(0), rat_int(1));
        assert_eq!(neg_one_pow(3), rat_int(-1));
        assert_eq!(neg_one_pow(-1), rat_int(-1));
        assert_eq!(neg_one_pow(-2), rat_int(1));
    }
}
