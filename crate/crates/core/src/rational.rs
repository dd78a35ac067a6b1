//! Exact rational parsing and rendering ("p/q", integers, terminating decimals).

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty value")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses an exact rational from `p/q`, an integer, or a terminating decimal
/// (`0.3` becomes exactly 3/10).
pub fn parse_rational(s: &str) -> Result<BigRational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        if d.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let whole_part: BigInt = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            whole
                .parse()
                .map_err(|_| RationalParseError::Invalid(s.to_string()))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Invalid(s.to_string()));
        }
        let frac_digits: BigInt = frac
            .parse()
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let abs_whole = whole_part.abs();
        return Ok(BigRational::new(
            sign * (abs_whole * &scale + frac_digits),
            scale,
        ));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
    Ok(BigRational::from_integer(n))
}

/// Renders a rational as `p/q`, or plain `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
