//! Exact rationals and the `"n"` / `"n/d"` text form used in every file format.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"n"` or `"n/d"`; the result is reduced.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |message: &str| Error::Parse {
        location: format!("rational `{text}`"),
        message: message.to_string(),
    };
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad("invalid numerator"))?;
    let denom: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| bad("invalid denominator"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// Positive part `max{x, 0}`.
pub fn positive_part(value: &Rational) -> Rational {
    if value.is_positive() {
        value.clone()
    } else {
        zero()
    }
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational(" 6/-4 ").unwrap(), rat(-3, 2));
        assert_eq!(format_rational(&parse_rational("10/5").unwrap()), "2");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rational("x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rational("1/2/3"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rational("0.5"), Err(Error::Parse { .. })));
    }
}
