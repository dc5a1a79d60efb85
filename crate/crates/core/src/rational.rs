//! Exact rational arithmetic used everywhere in the crate.
//!
//! All quantities (edge values, cut sizes, layer thresholds) are
//! arbitrary-precision rationals kept in lowest terms with positive
//! denominator; no floating point appears on any computation path.

use alloc::string::String;
use alloc::string::ToString;

use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;
use num_traits::{One, Signed, Zero};

/// The rational `n`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The rational `n / d`; panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}

pub fn is_one(q: &Rational) -> bool {
    q.is_one()
}

pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

/// Canonical text form: `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `p` or `p/q`. The denominator must be nonzero.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((num, den)) => {
            let num = num.trim().parse::<BigInt>().ok()?;
            let den = den.trim().parse::<BigInt>().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(num, den))
        }
    }
}
