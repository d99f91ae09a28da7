//! Exact rational scalars.
//!
//! Every computational kernel in this crate works over arbitrary-precision
//! rationals; floating point appears only in reporting layers. Values are
//! always kept in canonical form: fully reduced, denominator positive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};
use thiserror::Error;

/// Exact arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Error produced when parsing a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer {0:?} in rational literal")]
    BadInteger(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

/// Builds n/d from machine integers. Panics on d == 0; intended for literals.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rational literal with zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational n.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign of r as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Canonical string form "numerator/denominator"; the denominator is always
/// written explicitly, e.g. "5/2" and "3/1".
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "n/d" or a bare integer "n".
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |part: &str| -> Result<BigInt, ParseRationalError> {
        part.parse::<BigInt>()
            .map_err(|_| ParseRationalError::BadInteger(part.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let numer = parse_int(n)?;
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Nearest f64; reporting only.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing one rational as its canonical "num/den" string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a vector of rationals as "num/den" strings.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
