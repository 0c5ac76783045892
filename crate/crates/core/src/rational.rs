//! Exact rational scalars and their text forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn small(r: &Rational) -> Option<(i128, i128)> {
    Some((r.numer().to_i64()? as i128, r.denom().to_i64()? as i128))
}

fn reduced(n: i128, d: i128) -> Rational {
    let g = n.gcd(&d);
    Rational::new_raw(BigInt::from(n / g), BigInt::from(d / g))
}

/// `a · b`. Operands whose parts fit in 64 bits are multiplied in 128-bit
/// machine integers, which avoids most big-integer gcd work.
pub fn mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) => reduced(an * bn, ad * bd),
        _ => a * b,
    }
}

/// `a + b`, with the same fast path as [`mul`].
pub fn add(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) if ad == bd => reduced(an + bn, ad),
        (Some((an, ad)), Some((bn, bd))) => reduced(an * bd + bn * ad, ad * bd),
        _ => a + b,
    }
}

/// Parses `"p/q"`, `"-p/q"` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, or just `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Advisory decimal rendering with 15 significant digits.
pub fn format_decimal(r: &Rational) -> String {
    let v = match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => return "nan".to_string(),
    };
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.14e}")
    }
}
