//! Exact Lüroth dynamics.
//!
//! The map `T(x) = k(k+1)(x - 1/(k+1))` with `k = floor(1/x)` sends (0,1]
//! to itself, and `d_1(x) = k + 1`. For a rational `p/q` the orbit keeps
//! denominators dividing `q`, so digit extraction stays cheap; reconstruction
//! and cylinders multiply `d(d-1)` factors and grow by roughly
//! `2 log2(d)` bits per digit.
//!
//! Cylinders are left-open, right-closed: `1/2` has first digit 3 and sits at
//! the right end of `I_1(3) = (1/3, 1/2]`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Upper bound on digit-string lengths handled by the exact routines.
pub const DEFAULT_DIGIT_BUDGET: usize = 1_000_000;

/// A single Lüroth digit (always >= 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Digit(u64);

impl Digit {
    pub fn new(value: u64) -> Result<Self> {
        if value < 2 {
            return Err(Error::InvalidDigit(value));
        }
        Ok(Digit(value))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Digit {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Digit::new(value)
    }
}

impl From<Digit> for u64 {
    fn from(d: Digit) -> u64 {
        d.0
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Finite word of Lüroth digits; every entry is >= 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DigitString(Vec<u64>);

impl DigitString {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDigit(bad));
        }
        Ok(DigitString(digits))
    }

    pub fn empty() -> Self {
        DigitString(Vec::new())
    }

    /// Caller guarantees every digit is >= 2.
    pub(crate) fn from_vec_unchecked(digits: Vec<u64>) -> Self {
        debug_assert!(digits.iter().all(|&d| d >= 2));
        DigitString(digits)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    /// First `n` digits (or the whole word if shorter).
    pub fn prefix(&self, n: usize) -> DigitString {
        DigitString(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn push(&mut self, d: Digit) {
        self.0.push(d.get());
    }

    /// `self ++ [d]`
    pub fn extended(&self, d: Digit) -> DigitString {
        let mut out = self.clone();
        out.push(d);
        out
    }

    pub fn concat(&self, other: &DigitString) -> DigitString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DigitString(v)
    }
}

impl Deref for DigitString {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for DigitString {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        DigitString::new(v)
    }
}

impl From<DigitString> for Vec<u64> {
    fn from(w: DigitString) -> Vec<u64> {
        w.0
    }
}

/// Comma-separated decimal digits, e.g. `3,2,2`.
impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DigitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(DigitString::empty());
        }
        let digits = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad digit {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DigitString::new(digits)
    }
}

/// Left-open, right-closed rational interval `(left, right]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    left: ExactRational,
    right: ExactRational,
}

impl Interval {
    pub fn new(left: ExactRational, right: ExactRational) -> Result<Self> {
        if left >= right {
            return Err(Error::Domain(format!(
                "interval needs left < right, got ({left}, {right}]"
            )));
        }
        Ok(Interval { left, right })
    }

    pub fn left(&self) -> &ExactRational {
        &self.left
    }

    pub fn right(&self) -> &ExactRational {
        &self.right
    }

    pub fn length(&self) -> ExactRational {
        &self.right - &self.left
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.left < x && x <= &self.right
    }

    /// `self ⊆ other`
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.left >= other.left && self.right <= other.right
    }

    pub fn is_disjoint_from(&self, other: &Interval) -> bool {
        self.right <= other.left || other.right <= self.left
    }

    /// Euclidean distance between the closures; zero when they touch or overlap.
    pub fn distance_to(&self, other: &Interval) -> ExactRational {
        if self.right <= other.left {
            &other.left - &self.right
        } else if other.right <= self.left {
            &self.left - &other.right
        } else {
            BigRational::zero()
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}]",
            crate::rational::format_rational(&self.left),
            crate::rational::format_rational(&self.right)
        )
    }
}

fn check_unit(x: &ExactRational) -> Result<()> {
    if x <= &BigRational::zero() || x > &BigRational::one() {
        return Err(Error::Domain(format!("x = {x} is outside (0, 1]")));
    }
    Ok(())
}

/// `floor(1/x)` for x in (0,1], as a u64.
fn floor_reciprocal(x: &ExactRational) -> Result<u64> {
    let k = x.denom() / x.numer();
    k.to_u64()
        .filter(|&k| k < u64::MAX)
        .ok_or_else(|| Error::Domain(format!("digit of {x} does not fit in 64 bits")))
}

/// The Lüroth map `T`.
pub fn luroth_map(x: &ExactRational) -> Result<ExactRational> {
    check_unit(x)?;
    let k = BigInt::from(floor_reciprocal(x)?);
    // k(k+1)x - k
    let k_big = BigRational::from_integer(k.clone());
    let factor = BigRational::from_integer(&k * (&k + 1u32));
    Ok(factor * x - k_big)
}

/// `d_1(x) = floor(1/x) + 1`.
pub fn first_digit(x: &ExactRational) -> Result<Digit> {
    check_unit(x)?;
    Digit::new(floor_reciprocal(x)? + 1)
}

/// The first `n` digits of `x`, by exact iteration of `T`.
pub fn digits(x: &ExactRational, n: usize) -> Result<DigitString> {
    check_unit(x)?;
    if n == 0 {
        return Err(Error::Domain("digit count must be positive".into()));
    }
    if n > DEFAULT_DIGIT_BUDGET {
        return Err(Error::BudgetExceeded {
            needed: n as u128,
            budget: DEFAULT_DIGIT_BUDGET as u128,
        });
    }
    // Work on (p, q) directly: T(p/q) = (k(k+1)p - kq)/q with k = floor(q/p).
    let mut p = x.numer().clone();
    let q = x.denom().clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let k_big = &q / &p;
        let k = k_big
            .to_u64()
            .filter(|&k| k < u64::MAX)
            .ok_or_else(|| Error::Domain(format!("digit of {x} does not fit in 64 bits")))?;
        out.push(k + 1);
        p = &k_big * (&k_big + 1u32) * &p - &k_big * &q;
    }
    Ok(DigitString::from_vec_unchecked(out))
}

/// Numerator `A` and denominator `B` with `evaluate(w) = A/B` and
/// `|I(w)| = 1/B`, where `B = prod d_i(d_i - 1)`. Not reduced.
fn evaluate_parts(w: &[u64]) -> (BigInt, BigInt) {
    // S_i = (d_i - 1 + S_{i+1}) / (d_i (d_i - 1)), run from the back.
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    for &d in w.iter().rev() {
        let d1 = BigInt::from(d - 1);
        a = &d1 * &b + a;
        b *= BigInt::from(d) * d1;
    }
    (a, b)
}

/// Partial Lüroth sum of a finite word; the empty word evaluates to 0.
///
/// This is the left endpoint of the word's cylinder.
pub fn evaluate(w: &DigitString) -> ExactRational {
    let (a, b) = evaluate_parts(w);
    BigRational::new(a, b)
}

/// `|I_n(w)| = 1 / prod d_i(d_i - 1)`.
pub fn cylinder_length(w: &DigitString) -> Result<ExactRational> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let b: BigInt = w
        .iter()
        .map(|&d| BigInt::from(d) * BigInt::from(d - 1))
        .product();
    Ok(BigRational::new(BigInt::one(), b))
}

/// The cylinder `I_n(w)` as `(left, right]`.
pub fn cylinder(w: &DigitString) -> Result<Interval> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let (a, b) = evaluate_parts(w);
    let left = BigRational::new(a.clone(), b.clone());
    let right = BigRational::new(a + 1u32, b);
    Interval::new(left, right)
}

/// Lebesgue probability that `d_1 = t`, i.e. `1/(t(t-1))`.
pub fn digit_mass(t: Digit) -> ExactRational {
    let t = BigInt::from(t.get());
    BigRational::new(BigInt::one(), &t * (&t - 1u32))
}
