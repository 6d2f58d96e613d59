//! Exact rational scalars: the coefficient field for the whole crate.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. Serialization is the decimal string `"p/q"`
//! (or just `"p"` for integers).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rat = num_rational::BigRational;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"` with optional sign; the result is normalized.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_str)
        .map_err(|_| Error::Parse(format!("bad rational numerator: {s:?}")))?;
    let den = BigInt::from_str(den_str)
        .map_err(|_| Error::Parse(format!("bad rational denominator: {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in rational: {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Format in lowest terms, `"p"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_negative(r: &Rat) -> bool {
    r.numer().is_negative()
}
