//! Exact rationals and the conversions the rest of the crate needs.

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `p/q` or a bare integer. Decimal notation is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::invalid(format!("`{text}` is not an exact rational (use p/q)"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::invalid(format!("`{text}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Smallest integer `>= x`.
pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil().to_integer().to_i64().expect("threshold fits in i64")
}

pub fn floor_i64(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("value fits in i64")
}

/// `num/den` rounded half away from zero to `digits` decimal places.
pub fn decimal(num: i128, den: i128, digits: u32) -> String {
    assert!(den != 0, "zero denominator");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let negative = num < 0;
    let scale = 10i128.pow(digits);
    let scaled = num.abs() * scale;
    let (q, r) = scaled.div_rem(&den);
    let rounded = if 2 * r >= den { q + 1 } else { q };
    let int_part = rounded / scale;
    let frac_part = rounded % scale;
    let sign = if negative && rounded != 0 { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0width$}", width = digits as usize)
    }
}

pub fn rational_decimal(x: &Rational, digits: u32) -> String {
    let (num, den) = (x.numer(), x.denom());
    match (num.to_i128(), den.to_i128()) {
        (Some(n), Some(d)) if n.abs() < i128::MAX / 10i128.pow(digits + 1) => decimal(n, d, digits),
        _ => {
            let scale = BigInt::from(10u32).pow(digits);
            let scaled = (x.abs() * Rational::from_integer(scale.clone())).round().to_integer();
            let (int_part, frac_part) = scaled.div_rem(&scale);
            let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
            format!(
                "{sign}{int_part}.{:0width$}",
                frac_part,
                width = digits as usize
            )
        }
    }
}

pub fn is_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}
