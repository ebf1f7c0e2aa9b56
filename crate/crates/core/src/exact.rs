//! Exact integer and rational helpers.
//!
//! Every quantity in the library is an arbitrary-precision integer or a
//! reduced rational. The only conversion to floating point lives in
//! [`to_f64`], used by the continuum asymptote and for display.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type ExactInt = BigInt;
/// Reduced arbitrary-precision rational.
pub type ExactRat = BigRational;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_from_int(v: ExactInt) -> ExactRat {
    BigRational::from_integer(v)
}

/// Converts a rational that must be integral, failing loudly otherwise.
pub fn expect_integer(value: &ExactRat, what: &str) -> Result<ExactInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Inconsistent(format!(
            "{what} evaluated to non-integer {value}"
        )))
    }
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(value: &ExactRat) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Renders `value` with exactly `digits` fractional digits, rounding half to even.
pub fn to_decimal(value: &ExactRat, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled_num = value.numer().abs() * &scale;
    let den = value.denom();
    let (mut q, r) = scaled_num.div_rem(den);
    let twice = &r * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Greater => q += 1u32,
        std::cmp::Ordering::Equal if q.is_odd() => q += 1u32,
        _ => {}
    }
    let negative = value.numer().sign() == Sign::Minus && !q.is_zero();
    let mut s = q.to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        s.insert(s.len() - digits, '.');
    }
    if negative {
        s.insert(0, '-');
    }
    s
}

/// `p/q` form, with `q` omitted when it is one.
pub fn to_fraction(value: &ExactRat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// `n` choose `k`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
