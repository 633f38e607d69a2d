//! Arbitrary-precision rational scalars and small integer helpers.
//!
//! Coefficients and exponents throughout the crate are `num_rational`
//! big rationals, kept automatically in lowest terms with a positive
//! denominator.  This module adds the handful of conversions and gcd/lcm
//! helpers the rest of the crate leans on, plus the `n/d` text form used by
//! the command-line interface and the JSON emitters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar: arbitrary-precision numerator and denominator,
/// always reduced, denominator always positive.
pub type Rat = BigRational;

/// Builds a rational from machine integers; handy in tests and examples.
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "rational with zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Non-negative gcd, with `gcd(a, 0) = |a|` and `gcd(0, 0) = 0`.
pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Positive lcm of two positive integers.
pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// True if `q` is an integer (denominator one).
pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

/// The denominator of `q` in lowest terms, as a positive integer.
pub fn denominator(q: &Rat) -> BigInt {
    q.denom().clone()
}

/// Renders a rational as `n` when integral and `n/d` otherwise.
pub fn format_rat(q: &Rat) -> String {
    if is_integer(q) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the `n` / `n/d` forms produced by [`format_rat`].
///
/// Accepts an optional leading sign on the numerator; the denominator, when
/// present, must be a positive integer.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num_text
        .parse()
        .map_err(|_| format!("invalid integer `{num_text}`"))?;
    let den: BigInt = match den_text {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    if den.is_negative() {
        return Err("denominator must be positive".into());
    }
    Ok(Rat::new(num, den))
}
