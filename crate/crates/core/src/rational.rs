//! Exact fractions.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with
//! a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Decimal rendering with `digits` significant digits, for display only.
pub fn approx(value: &Rational, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let Some(f) = value.to_f64() else {
        return if value.is_negative() { "-inf".into() } else { "inf".into() };
    };
    let magnitude = f.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{f:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}
