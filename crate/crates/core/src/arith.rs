//! Exact integers and reduced rationals.
//!
//! Everything in the crate is built on [`Rational`], which is always kept in
//! canonical form: positive denominator, coprime numerator and denominator,
//! and zero as `0/1`. Rationals render as `"u/v"` or `"u"`.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` reduced. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `max(|num|, den)` of the canonical form; `height(0) = 1`.
pub fn height(x: &Rational) -> Integer {
    let num = x.numer().abs();
    let den = x.denom().clone();
    if num > den {
        num
    } else {
        den
    }
}

/// Height as a machine integer, saturating.
pub fn height_u64(x: &Rational) -> u64 {
    u64::try_from(height(x)).unwrap_or(u64::MAX)
}

/// Exact integer square root: `Some(s)` with `s >= 0` and `s*s == n`.
pub fn isqrt_exact(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// The nonnegative square root of `x` when `x` is the square of a rational.
///
/// Negative inputs and non-squares give `None`.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let num = isqrt_exact(x.numer())?;
    let den = isqrt_exact(x.denom())?;
    Some(Rational::new_raw(num, den))
}

/// Parses `"u"` or `"u/v"` (optional leading sign, surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Total order used for all deterministic output: height first, then value.
pub fn canonical_cmp(a: &Rational, b: &Rational) -> Ordering {
    height(a).cmp(&height(b)).then_with(|| a.cmp(b))
}

/// Orders pairs by the first component, then the second, each canonically.
pub fn canonical_cmp_pair(a: (&Rational, &Rational), b: (&Rational, &Rational)) -> Ordering {
    canonical_cmp(a.0, b.0).then_with(|| canonical_cmp(a.1, b.1))
}

/// All `u` with `|u| <= h` and `gcd(u, v) = 1`, ascending. For `v = 1` this
/// includes `0`.
pub fn numerators_for_denominator(v: u64, h: u64) -> Vec<i64> {
    let h = h as i64;
    (-h..=h)
        .filter(|&u| (u.unsigned_abs()).gcd(&v) == 1)
        .collect()
}

/// Every rational of height at most `h` as a coprime pair `(u, v)`,
/// ordered by denominator and then numerator. Complete and duplicate-free.
pub fn small_rationals(h: u64) -> Vec<(i64, u64)> {
    (1..=h)
        .flat_map(|v| {
            numerators_for_denominator(v, h)
                .into_iter()
                .map(move |u| (u, v))
        })
        .collect()
}

/// [`small_rationals`] as exact values.
pub fn rationals_up_to_height(h: u64) -> Vec<Rational> {
    small_rationals(h)
        .into_iter()
        .map(|(u, v)| Rational::new_raw(BigInt::from(u), BigInt::from(v)))
        .collect()
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// For `#[serde(serialize_with = ...)]`: rationals always serialize as strings.
pub fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_rationals<S: serde::Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

pub fn ser_opt_rational<S: serde::Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

pub fn sign_of(x: &Integer) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
