//! Exact rational carrier plus the text formats used at the edges.
//!
//! Rationals print as `p/q` in lowest terms (always with the slash, so `1`
//! prints as `1/1`). The parser accepts `p/q`, bare integers and plain
//! decimals such as `0.2` or `-1.5e-3`, all converted exactly.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub fn ratio(p: i64, q: i64) -> ExactRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(n: u64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, an integer or a decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Result<ExactRational> {
    let bad = || Error::Parse(format!("not a rational or decimal: {text:?}"));
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = text[i + 1..].parse().map_err(|_| bad())?;
            (&text[..i], e)
        }
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// `p/q` text, lowest terms.
pub fn format_rational(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Natural log of |n| without overflowing f64 for huge integers.
pub fn ln_abs_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of |x|; `-inf` for zero.
pub fn ln_abs(x: &ExactRational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_abs_int(x.numer()) - ln_abs_int(x.denom())
}

/// Nearest-ish f64 of an exact rational, robust for very large numerator and denominator.
pub fn to_f64(x: &ExactRational) -> f64 {
    if let (Some(p), Some(q)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if p.is_finite() && q.is_finite() {
            return p / q;
        }
    }
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.numer().sign() == Sign::Minus {
        -1.0
    } else {
        1.0
    };
    sign * ln_abs(x).exp()
}

/// Exact conversion of a finite f64 into a rational.
pub fn from_f64(x: f64) -> Result<ExactRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

pub fn floor_to_u64(x: &ExactRational) -> Option<u64> {
    x.floor().to_integer().to_u64()
}

/// `q` to the power `k` for a rational base.
pub fn pow(base: &ExactRational, k: u32) -> ExactRational {
    let numer = num_traits::pow(base.numer().clone(), k as usize);
    let denom = num_traits::pow(base.denom().clone(), k as usize);
    BigRational::new(numer, denom)
}
