//! Certified evaluation of the Moran pressure series
//!
//! ```text
//! F_u(s)    = sum_{t>=2}   (2^-u / (t(t-1)))^s
//! F_{M,u}(s) = sum_{t=2}^M (2^-u / (t(t-1)))^s
//! ```
//!
//! and bisection solvers for their unit-level roots `s(u)` and `s_M(u)`,
//! plus the three-case dimension formula for the run-length level sets.
//!
//! All evaluation is in f64. Every returned number carries an explicit
//! error bound covering truncation and rounding. The infinite series is
//! summed directly for `t < TAIL_START` and the rest is handled by
//! Euler–Maclaurin: `g(t) = (t(t-1))^-s` is completely monotone on
//! `(1, inf)`, which makes the remainder bound below rigorous.
//!
//! `F_u(s)` diverges for `s <= 1/2`, so `s(u)` lives in `(1/2, 1]` and tends
//! to 1/2 (not 0) as `u` grows. The truncated roots `s_M(u)` do tend to 0.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{cylinder_length, DigitString};
use crate::rational::{self, ExactRational};

const EPS: f64 = f64::EPSILON;

/// First index handled by the Euler–Maclaurin tail.
const TAIL_START: u64 = 32;
/// Number of Bernoulli correction terms.
const EM_TERMS: usize = 8;
/// Terms of the binomial series for the tail integral.
const INTEGRAL_TERMS: usize = 40;
/// Largest finite cutoff summed term by term.
pub const MAX_DIRECT_TERMS: u64 = 100_000_000;
/// Default cap on words enumerated by [`finite_depth_pressure_root`].
pub const DEFAULT_WORD_BUDGET: u128 = 10_000_000;
pub const DEFAULT_MAX_ITERATIONS: usize = 400;

/// B_2, B_4, …, B_16.
const BERNOULLI: [f64; EM_TERMS] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// A value together with a bound on its distance from the true quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedValue {
    pub value: f64,
    pub error_bound: f64,
}

impl CertifiedValue {
    pub fn new(value: f64, error_bound: f64) -> Self {
        debug_assert!(error_bound >= 0.0);
        CertifiedValue { value, error_bound }
    }

    pub fn exact(value: f64) -> Self {
        CertifiedValue::new(value, 0.0)
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    /// Whether `x` is consistent with this value.
    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.error_bound
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {:.1e}",
            format_significant(self.value, self.error_bound),
            self.error_bound
        )
    }
}

/// Prints `value` with as many decimals as the error bound justifies,
/// trimming trailing zeros but keeping one decimal.
pub fn format_significant(value: f64, error_bound: f64) -> String {
    let decimals = if error_bound > 0.0 {
        (-error_bound.log10()).ceil().clamp(1.0, 17.0) as usize
    } else {
        17
    };
    let mut s = format!("{value:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') && !s.ends_with(".0") {
            s.pop();
        }
    }
    if s == "-0.0" {
        s = "0.0".into();
    }
    s
}

/// Working precision in bits. Arithmetic is f64, so at most 53; lowering it
/// raises the tolerance floor accepted by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const ENV_VAR: &'static str = "LUROTH_PRECISION_BITS";

    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 || bits > 53 {
            return Err(Error::Domain(format!(
                "precision must be between 1 and 53 bits (f64 working precision), got {bits}"
            )));
        }
        Ok(Precision { bits })
    }

    /// Reads `LUROTH_PRECISION_BITS`, falling back to 53.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => {
                let bits = v.trim().parse::<u32>().map_err(|_| {
                    Error::Parse(format!("{}={v:?} is not an integer", Self::ENV_VAR))
                })?;
                Precision::new(bits)
            }
            Err(_) => Ok(Precision::default()),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Smallest tolerance a solver will accept.
    pub fn tolerance_floor(&self) -> f64 {
        64.0 * 2f64.powi(-(self.bits as i32))
    }

    pub fn check(&self, tol: f64) -> Result<()> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::Domain(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        if tol < self.tolerance_floor() {
            return Err(Error::PrecisionExhausted {
                tol,
                floor: self.tolerance_floor(),
            });
        }
        Ok(())
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision { bits: 53 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub precision: Precision,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            precision: Precision::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cutoff {
    Finite(u64),
    Infinite,
}

/// Shift `u` and cutoff `M` of the pressure series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSpec {
    u: f64,
    cutoff: Cutoff,
}

impl SeriesSpec {
    pub fn new(u: f64, cutoff: Cutoff) -> Result<Self> {
        if !(u >= 0.0) || !u.is_finite() {
            return Err(Error::Domain(format!("u must be finite and >= 0, got {u}")));
        }
        if let Cutoff::Finite(m) = cutoff {
            if m < 2 {
                return Err(Error::Domain(format!("cutoff M must be >= 2, got {m}")));
            }
        }
        Ok(SeriesSpec { u, cutoff })
    }

    pub fn infinite(u: f64) -> Result<Self> {
        SeriesSpec::new(u, Cutoff::Infinite)
    }

    pub fn truncated(u: f64, m: u64) -> Result<Self> {
        SeriesSpec::new(u, Cutoff::Finite(m))
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }
}

fn ln_weight(t: u64) -> f64 {
    let t = t as f64;
    t.ln() + (t - 1.0).ln()
}

/// Neumaier-compensated sum of `(t(t-1))^-s` for `t` in `from..=to`, with a
/// rounding bound.
fn direct_sum(s: f64, from: u64, to: u64) -> (f64, f64) {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut bound = 0.0f64;
    for t in from..=to {
        let lw = ln_weight(t);
        let term = (-s * lw).exp();
        // ln, the product s*ln and exp each contribute a few ulps relative.
        bound += term * (4.0 + 2.0 * s * lw);
        let next = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - next) + term;
        } else {
            comp += (term - next) + sum;
        }
        sum = next;
    }
    let total = sum + comp;
    (total, EPS * (bound + 4.0 * total.abs()))
}

/// `∫_N^∞ (t(t-1))^-s dt` via `(1-1/t)^-s = Σ (s)_j/j! t^-j`.
fn tail_integral(s: f64, n: f64) -> (f64, f64) {
    let mut coef = 1.0f64; // (s)_j / j!
    let mut total = 0.0f64;
    let mut magnitude = 0.0f64;
    let base = n.powf(1.0 - 2.0 * s);
    let mut npow = base; // N^(1-2s-j)
    for j in 0..INTEGRAL_TERMS {
        let term = coef * npow / (2.0 * s + j as f64 - 1.0);
        total += term;
        magnitude += term.abs();
        coef *= (s + j as f64) / (j as f64 + 1.0);
        npow /= n;
    }
    let j = INTEGRAL_TERMS as f64;
    // Remaining coefficients grow at most geometrically by max(1, (s+J)/(J+1)).
    let ratio = ((s + j) / (j + 1.0)).max(1.0) / n;
    let truncation = coef * npow / (2.0 * s + j - 1.0) / (1.0 - ratio);
    let rounding = EPS * (8.0 + INTEGRAL_TERMS as f64) * magnitude;
    (total, truncation + rounding)
}

/// Derivatives `g, g', …, g^(order)` of `g(t) = (t(t-1))^-s` at `t`.
fn weight_derivatives(s: f64, t: f64, order: usize) -> Vec<f64> {
    // g = exp(h), h = -s (ln t + ln(t-1)); g^(n+1) = Σ_k C(n,k) h^(k+1) g^(n-k)
    let mut h = vec![0.0; order + 1]; // h[j] = h^(j) for j >= 1
    let mut fact = 1.0f64;
    for j in 1..=order {
        if j > 1 {
            fact *= (j - 1) as f64;
        }
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        h[j] = -s * sign * fact * (t.powi(-(j as i32)) + (t - 1.0).powi(-(j as i32)));
    }
    let mut g = vec![0.0; order + 1];
    g[0] = (-s * (t.ln() + (t - 1.0).ln())).exp();
    for n in 0..order {
        let mut acc = 0.0;
        let mut binom = 1.0f64;
        for k in 0..=n {
            acc += binom * h[k + 1] * g[n - k];
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        g[n + 1] = acc;
    }
    g
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `Σ_{t>=N} (t(t-1))^-s` by Euler–Maclaurin, with a rigorous error bound.
fn em_tail(s: f64, n: u64) -> (f64, f64) {
    let nf = n as f64;
    let (integral, integral_err) = tail_integral(s, nf);
    let derivs = weight_derivatives(s, nf, 2 * EM_TERMS - 1);
    let mut total = integral + derivs[0] / 2.0;
    let mut magnitude = integral.abs() + derivs[0].abs() / 2.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let order = 2 * (k + 1);
        let term = b / factorial(order) * derivs[order - 1];
        total -= term;
        magnitude += term.abs();
    }
    // g^(2p) keeps one sign, so |R_p| <= 2 |B_2p| / (2p)! |g^(2p-1)(N)|.
    let p = 2 * EM_TERMS;
    let remainder = 2.0 * BERNOULLI[EM_TERMS - 1].abs() / factorial(p) * derivs[p - 1].abs();
    let rounding = EPS * 64.0 * magnitude;
    (total, integral_err + remainder + rounding)
}

/// `Σ_{t=2}^{N} (2^-u/(t(t-1)))^s`, plain truncation (no tail).
pub fn truncated_sum(u: f64, s: f64, n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let (sum, _) = direct_sum(s, 2, n);
    (-u * s * std::f64::consts::LN_2).exp() * sum
}

/// Crude bound on the terms beyond `N`:
/// `2^-us (N^-2s + N^(1-2s)/(2s-1))`, from `t(t-1) >= (t-1)^2`.
pub fn tail_bound(u: f64, s: f64, n: u64) -> Result<f64> {
    if !(s > 0.5) {
        return Err(Error::Divergent(s));
    }
    let nf = n.max(1) as f64;
    let scale = (-u * s * std::f64::consts::LN_2).exp();
    Ok(scale * (nf.powf(-2.0 * s) + nf.powf(1.0 - 2.0 * s) / (2.0 * s - 1.0)))
}

/// Evaluates the pressure sum with `error_bound <= tol`.
pub fn pressure_sum(spec: &SeriesSpec, s: f64, tol: f64) -> Result<CertifiedValue> {
    pressure_sum_with(spec, s, tol, &SolverConfig::default())
}

pub fn pressure_sum_with(
    spec: &SeriesSpec,
    s: f64,
    tol: f64,
    config: &SolverConfig,
) -> Result<CertifiedValue> {
    config.precision.check(tol)?;
    let value = pressure_value(spec, s)?;
    if value.error_bound > tol {
        return Err(Error::ToleranceUnattainable { tol, iterations: 0 });
    }
    Ok(value)
}

/// Evaluation without a tolerance target; the bound is whatever it is.
fn pressure_value(spec: &SeriesSpec, s: f64) -> Result<CertifiedValue> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!(
            "s must be positive and finite, got {s}"
        )));
    }
    let scale = (-spec.u * s * std::f64::consts::LN_2).exp();
    let scale_err = EPS * (2.0 + spec.u * s);
    let (sum, err) = match spec.cutoff {
        Cutoff::Finite(m) => {
            if m - 1 > MAX_DIRECT_TERMS {
                return Err(Error::BudgetExceeded {
                    needed: (m - 1) as u128,
                    budget: MAX_DIRECT_TERMS as u128,
                });
            }
            direct_sum(s, 2, m)
        }
        Cutoff::Infinite => {
            if s <= 0.5 {
                return Err(Error::Divergent(s));
            }
            let (head, head_err) = direct_sum(s, 2, TAIL_START - 1);
            let (tail, tail_err) = em_tail(s, TAIL_START);
            (head + tail, head_err + tail_err + EPS * (head + tail).abs())
        }
    };
    let value = scale * sum;
    let bound = scale * err + value.abs() * (scale_err + EPS);
    Ok(CertifiedValue::new(value, bound))
}

/// Certified root of a strictly decreasing function crossing 1.
///
/// `eval` returns a certified value of the function; `lo < hi` must already
/// bracket the root (`f(lo) >= 1 >= f(hi)`). Stops when the bracket
/// half-width and the residual at the midpoint are both below `tol`.
pub fn bisect_decreasing<F>(
    eval: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iterations: usize,
) -> Result<CertifiedValue>
where
    F: Fn(f64) -> Result<CertifiedValue>,
{
    for _ in 0..max_iterations {
        let mid = 0.5 * (lo + hi);
        let f = eval(mid)?;
        let residual = (f.value - 1.0).abs() + f.error_bound;
        let half_width = 0.5 * (hi - lo);
        if half_width <= tol && residual <= tol {
            return Ok(CertifiedValue::new(mid, half_width.max(residual)));
        }
        if mid <= lo || mid >= hi {
            break;
        }
        if f.lower() > 1.0 {
            lo = mid;
        } else if f.upper() < 1.0 {
            hi = mid;
        } else {
            // The function is within its own error bar of 1 at mid: the
            // sign is undecidable, so the bracket cannot shrink further.
            if half_width <= tol && residual <= tol {
                return Ok(CertifiedValue::new(mid, half_width.max(residual)));
            }
            break;
        }
    }
    Err(Error::ToleranceUnattainable {
        tol,
        iterations: max_iterations,
    })
}

/// `s(u)`: root of `F_u(s) = 1` in `(1/2, 1]`.
pub fn solve_s(u: f64, tol: f64) -> Result<CertifiedValue> {
    solve_s_with(u, tol, &SolverConfig::default())
}

pub fn solve_s_with(u: f64, tol: f64, config: &SolverConfig) -> Result<CertifiedValue> {
    config.precision.check(tol)?;
    let spec = SeriesSpec::infinite(u)?;
    let eval = |s: f64| pressure_value(&spec, s);
    // F_u(1) = 2^-u <= 1 analytically, so the root is at most 1.
    let hi = 1.0;
    let mut delta = 0.25;
    let lo = loop {
        let candidate = 0.5 + delta;
        if eval(candidate)?.lower() > 1.0 {
            break candidate;
        }
        delta *= 0.5;
        if delta < 1e-300 {
            return Err(Error::ToleranceUnattainable {
                tol,
                iterations: config.max_iterations,
            });
        }
    };
    bisect_decreasing(eval, lo, hi, tol, config.max_iterations)
}

/// Certified enclosure of `s(u)` without the residual requirement of
/// [`solve_s`]: bisects on the certified sign of `F_u - 1` and reports the
/// final bracket's half-width. For large `u` the root sits just above 1/2
/// where `F_u` is steep, and the bracket can get tighter than any residual
/// tolerance f64 can certify.
pub fn enclose_s(u: f64, tol: f64) -> Result<CertifiedValue> {
    let config = SolverConfig::default();
    config.precision.check(tol)?;
    let spec = SeriesSpec::infinite(u)?;
    let eval = |s: f64| pressure_value(&spec, s);
    let mut hi = 1.0f64;
    let mut delta = 0.25;
    let mut lo = loop {
        let candidate = 0.5 + delta;
        if eval(candidate)?.lower() > 1.0 {
            break candidate;
        }
        delta *= 0.5;
        if delta < 1e-300 {
            return Err(Error::ToleranceUnattainable {
                tol,
                iterations: config.max_iterations,
            });
        }
    };
    for _ in 0..config.max_iterations {
        if 0.5 * (hi - lo) <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = eval(mid)?;
        if f.lower() > 1.0 {
            lo = mid;
        } else if f.upper() < 1.0 {
            hi = mid;
        } else {
            break;
        }
    }
    Ok(CertifiedValue::new(0.5 * (lo + hi), 0.5 * (hi - lo)))
}

/// `s_M(u)`: root of the `M`-term equation in `[0, 1)`; exactly 0 when `M = 2`.
pub fn solve_s_m(u: f64, m: u64, tol: f64) -> Result<CertifiedValue> {
    solve_s_m_with(u, m, tol, &SolverConfig::default())
}

pub fn solve_s_m_with(u: f64, m: u64, tol: f64, config: &SolverConfig) -> Result<CertifiedValue> {
    config.precision.check(tol)?;
    let spec = SeriesSpec::truncated(u, m)?;
    if m == 2 {
        return Ok(CertifiedValue::exact(0.0));
    }
    if m - 1 > MAX_DIRECT_TERMS {
        return Err(Error::BudgetExceeded {
            needed: (m - 1) as u128,
            budget: MAX_DIRECT_TERMS as u128,
        });
    }
    // F(0) = M-1 > 1 and F(1) = 2^-u (1 - 1/M) < 1.
    bisect_decreasing(
        |s| pressure_value(&spec, s),
        0.0,
        1.0,
        tol,
        config.max_iterations,
    )
}

/// Root of `Σ_{w ∈ [2,M]^n} |I_n(w)|^s = 1`, by brute-force enumeration of
/// the depth-`n` cylinders.
///
/// The cylinder lengths come from exact rational arithmetic, so this route
/// shares nothing with [`solve_s_m`] beyond the bisection driver.
pub fn finite_depth_pressure_root(m: u64, n: usize, tol: f64) -> Result<CertifiedValue> {
    finite_depth_pressure_root_with(m, n, tol, DEFAULT_WORD_BUDGET, &SolverConfig::default())
}

pub fn finite_depth_pressure_root_with(
    m: u64,
    n: usize,
    tol: f64,
    budget: u128,
    config: &SolverConfig,
) -> Result<CertifiedValue> {
    config.precision.check(tol)?;
    if m < 2 {
        return Err(Error::Domain(format!("M must be >= 2, got {m}")));
    }
    if n == 0 {
        return Err(Error::Domain("depth must be >= 1".into()));
    }
    let count = (m as u128 - 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget,
        });
    }
    if m == 2 {
        return Ok(CertifiedValue::exact(0.0));
    }
    let mut log_lengths = Vec::with_capacity(count as usize);
    let mut word = vec![2u64; n];
    loop {
        let len = cylinder_length(&DigitString::new(word.clone())?)?;
        log_lengths.push(-rational::ln_abs(&len));
        // odometer over [2, M]^n
        let mut i = n;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if word[i] < m {
                word[i] += 1;
                break;
            }
            word[i] = 2;
        }
        if word.iter().all(|&d| d == 2) {
            break;
        }
    }
    let eval = |s: f64| -> Result<CertifiedValue> {
        let mut sum = 0.0;
        let mut bound = 0.0;
        for &l in &log_lengths {
            let term = (-s * l).exp();
            sum += term;
            bound += term * (4.0 + 2.0 * s * l);
        }
        Ok(CertifiedValue::new(
            sum,
            EPS * (bound + log_lengths.len() as f64 * sum),
        ))
    };
    bisect_decreasing(eval, 0.0, 1.0, tol, config.max_iterations)
}

/// `(α, β)` with `0 <= α <= β <= 1`, held exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimParams {
    alpha: ExactRational,
    beta: ExactRational,
}

impl DimParams {
    pub fn new(alpha: ExactRational, beta: ExactRational) -> Result<Self> {
        if alpha.is_negative() || beta > BigRational::one() || alpha > beta {
            return Err(Error::ParameterRegion(format!(
                "need 0 <= alpha <= beta <= 1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(DimParams { alpha, beta })
    }

    pub fn alpha(&self) -> &ExactRational {
        &self.alpha
    }

    pub fn beta(&self) -> &ExactRational {
        &self.beta
    }

    /// `β / (1 + β)`
    pub fn critical_alpha(&self) -> ExactRational {
        &self.beta / (BigRational::one() + &self.beta)
    }

    /// `0 <= α < β/(1+β) < β < 1`, the case with a non-trivial dimension.
    pub fn is_middle_case(&self) -> bool {
        let one = BigRational::one();
        self.beta.is_positive() && self.beta < one && self.alpha < self.critical_alpha()
    }
}

/// `ζ = β²(1-α) / ((1-β)(β - α(1+β)))`, exactly.
pub fn zeta(params: &DimParams) -> Result<ExactRational> {
    if !params.is_middle_case() {
        return Err(Error::ParameterRegion(format!(
            "zeta needs 0 <= alpha < beta/(1+beta) and 0 < beta < 1, got alpha = {}, beta = {}",
            params.alpha, params.beta
        )));
    }
    let one = BigRational::one();
    let a = &params.alpha;
    let b = &params.beta;
    let numer = b * b * (&one - a);
    let denom = (&one - b) * (b - a * (&one + b));
    debug_assert!(!denom.is_zero());
    Ok(numer / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DimCase {
    /// `β = 0`
    One,
    /// `0 <= α < β/(1+β) < β < 1`
    Middle,
    /// everything else, boundaries included
    Zero,
}

impl fmt::Display for DimCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimCase::One => "one",
            DimCase::Middle => "middle",
            DimCase::Zero => "zero",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dimension {
    pub case: DimCase,
    pub value: CertifiedValue,
    /// Present in the middle case.
    pub zeta: Option<ExactRational>,
}

/// Hausdorff dimension of the level set with liminf `α` and limsup `β` of `ℓ_n/n`.
pub fn dim_e(params: &DimParams, tol: f64) -> Result<Dimension> {
    dim_e_with(params, tol, &SolverConfig::default())
}

pub fn dim_e_with(params: &DimParams, tol: f64, config: &SolverConfig) -> Result<Dimension> {
    config.precision.check(tol)?;
    if params.beta.is_zero() {
        return Ok(Dimension {
            case: DimCase::One,
            value: CertifiedValue::exact(1.0),
            zeta: None,
        });
    }
    if params.is_middle_case() {
        let z = zeta(params)?;
        let value = solve_s_with(rational::to_f64(&z), tol, config)?;
        return Ok(Dimension {
            case: DimCase::Middle,
            value,
            zeta: Some(z),
        });
    }
    Ok(Dimension {
        case: DimCase::Zero,
        value: CertifiedValue::exact(0.0),
        zeta: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    // Roots of F_u(s) = 1 from an independent 30-digit evaluation using
    // Σ_{t>=2} (t(t-1))^-s = Σ_k (s)_k/k! (ζ(2s+k) - 1) and bisection.
    const S_ORACLE: [(f64, f64); 6] = [
        (0.0, 1.0),
        (0.25, 0.927014472978108225558881),
        (0.5, 0.8712822325503140358696043),
        (1.0, 0.7906094425744898060623808),
        (2.0, 0.6924324587041706966760651),
        (4.0, 0.5960724087243045796776353),
    ];

    #[test]
    fn pressure_sum_examples() {
        let v = pressure_sum(&SeriesSpec::infinite(0.0).unwrap(), 1.0, 1e-12).unwrap();
        assert!((v.value - 1.0).abs() <= 1e-12, "{v:?}");
        for s in [0.3, 0.7, 1.0, 2.5] {
            let v = pressure_sum(&SeriesSpec::truncated(0.0, 2).unwrap(), s, 1e-14).unwrap();
            assert!(v.contains(0.5f64.powf(s)));
        }
        let v = pressure_sum(&SeriesSpec::infinite(1.0).unwrap(), 1.0, 1e-12).unwrap();
        assert!((v.value - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn infinite_sum_matches_zeta_series_oracle() {
        // (u, s, F_u(s)) from the same independent 30-digit oracle.
        let cases = [
            (0.0, 0.75, 2.010938128713738451687793),
            (0.0, 0.55, 10.01779791868442528120242),
            (0.0, 0.51, 50.01880286135705885737982),
            (1.0, 0.8, 0.9623552812689569899399847),
            (2.0, 1.5, 0.05959778179824762827781712),
            (0.0, 3.0, 0.130395598910641381165509),
            (4.0, 0.6, 0.9504183077712391047670589),
        ];
        for (u, s, expected) in cases {
            let v = pressure_sum(&SeriesSpec::infinite(u).unwrap(), s, 1e-10).unwrap();
            assert!(
                (v.value - expected).abs() <= v.error_bound.max(1e-15) + 4.0 * EPS * expected,
                "u={u} s={s}: {v:?} vs {expected}"
            );
            assert!(v.error_bound < 1e-12 * expected.max(1.0), "{v:?}");
        }
    }

    #[test]
    fn divergence_and_domain_errors() {
        let spec = SeriesSpec::infinite(0.0).unwrap();
        assert!(matches!(
            pressure_sum(&spec, 0.5, 1e-8),
            Err(Error::Divergent(_))
        ));
        assert!(matches!(
            pressure_sum(&spec, 0.3, 1e-8),
            Err(Error::Divergent(_))
        ));
        assert!(matches!(
            pressure_sum(&spec, 0.0, 1e-8),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            pressure_sum(&spec, -1.0, 1e-8),
            Err(Error::Domain(_))
        ));
        assert!(SeriesSpec::new(-0.1, Cutoff::Infinite).is_err());
        assert!(SeriesSpec::truncated(0.0, 1).is_err());
    }

    #[test]
    fn precision_floor_is_enforced() {
        let spec = SeriesSpec::infinite(0.0).unwrap();
        assert!(matches!(
            pressure_sum(&spec, 1.0, 1e-20),
            Err(Error::PrecisionExhausted { .. })
        ));
        let coarse = SolverConfig {
            precision: Precision::new(24).unwrap(),
            ..SolverConfig::default()
        };
        assert!(solve_s_with(0.0, 1e-8, &coarse).is_err());
        assert!(solve_s_with(0.0, 1e-4, &coarse).is_ok());
        assert!(Precision::new(54).is_err());
        assert!(Precision::new(0).is_err());
    }

    #[test]
    fn tail_bound_dominates_the_missing_terms() {
        for &(u, s) in &[(0.0, 0.8), (1.0, 0.6), (0.5, 1.0), (2.0, 1.7)] {
            for n in [10u64, 100, 1000] {
                let bound = tail_bound(u, s, n).unwrap();
                let near = truncated_sum(u, s, n);
                let far = truncated_sum(u, s, 20 * n);
                assert!(far - near < bound, "u={u} s={s} n={n}");
                let full = pressure_sum(&SeriesSpec::infinite(u).unwrap(), s, 1e-10).unwrap();
                assert!(full.value - near < bound);
            }
        }
        assert!(tail_bound(0.0, 0.5, 10).is_err());
    }

    #[test]
    fn solve_s_against_oracle() {
        for (u, expected) in S_ORACLE {
            let r = solve_s(u, 1e-11).unwrap();
            assert!(
                (r.value - expected).abs() <= r.error_bound + 1e-15,
                "u={u}: {r:?}"
            );
            assert!(r.error_bound <= 1e-11);
            assert!(r.value > 0.5 && r.value <= 1.0);
        }
    }

    #[test]
    fn enclosure_agrees_with_solver() {
        for (u, expected) in S_ORACLE {
            let e = enclose_s(u, 1e-12).unwrap();
            assert!(
                e.contains(expected) || (e.value - expected).abs() < 1e-15,
                "u={u}: {e:?}"
            );
        }
    }

    #[test]
    fn solve_s_ordering() {
        let s1 = solve_s(1.0, 1e-10).unwrap();
        let s2 = solve_s(2.0, 1e-10).unwrap();
        assert!(s1.value < 1.0 && s1.value > 0.5);
        assert!(s2.upper() < s1.lower());
    }

    #[test]
    fn large_u_stays_above_one_half() {
        let r = solve_s(20.0, 1e-9).unwrap();
        assert!(r.value > 0.5 && r.value < 0.501, "{r:?}");
        // F'(s) ~ 1e6 at u = 40, so a 1e-10 residual needs s to 1e-16: out of f64 reach.
        assert!(solve_s(40.0, 1e-10).unwrap_err().is_exhaustion());
        let e = enclose_s(40.0, 1e-10).unwrap();
        assert!(e.lower() > 0.5 && e.error_bound <= 1e-10, "{e:?}");
    }

    #[test]
    fn solve_s_m_examples() {
        for u in [0.0, 1.0, 7.5] {
            assert_eq!(solve_s_m(u, 2, 1e-10).unwrap().value, 0.0);
        }
        // Independent scipy brentq roots.
        let cases = [
            (0.0, 3, 0.6009668516136755),
            (0.0, 4, 0.7583994840048078),
            (0.0, 5, 0.8291816785130552),
            (0.75, 3, 0.4074089561334894),
            (1.8, 3, 0.2831988370796376),
            (1.0, 10, 0.6745438745213324),
            (0.0, 100, 0.994875636713207),
            (2.0, 3, 0.2677802127797862),
        ];
        for (u, m, expected) in cases {
            let r = solve_s_m(u, m, 1e-12).unwrap();
            assert!(
                (r.value - expected).abs() <= r.error_bound + 1e-14,
                "u={u} M={m}: {r:?}"
            );
        }
        // two-term equation checked directly
        let r = solve_s_m(0.0, 3, 1e-12).unwrap();
        let lhs = 0.5f64.powf(r.value) + (1.0f64 / 6.0).powf(r.value);
        assert!((lhs - 1.0).abs() < 1e-11);
    }

    #[test]
    fn finite_roots_increase_to_the_infinite_root() {
        let s = solve_s(0.0, 1e-12).unwrap().value;
        let mut prev = 0.0;
        for m in [3u64, 10, 100, 1000, 10_000] {
            let r = solve_s_m(0.0, m, 1e-12).unwrap().value;
            assert!(r > prev && r < s);
            prev = r;
        }
        assert!(s - prev < 1e-4);
    }

    #[test]
    fn depth_pressure_matches_single_letter_root() {
        assert_eq!(finite_depth_pressure_root(2, 5, 1e-10).unwrap().value, 0.0);
        let base = solve_s_m(0.0, 3, 1e-12).unwrap();
        for n in [1, 4] {
            let r = finite_depth_pressure_root(3, n, 1e-12).unwrap();
            assert!((r.value - base.value).abs() < 1e-10, "n={n}");
        }
        assert!(matches!(
            finite_depth_pressure_root_with(10, 12, 1e-10, 1000, &SolverConfig::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn zeta_examples() {
        let p = DimParams::new(ratio(1, 5), ratio(1, 2)).unwrap();
        assert_eq!(zeta(&p).unwrap(), ratio(2, 1));
        let p = DimParams::new(ratio(0, 1), ratio(1, 2)).unwrap();
        assert_eq!(zeta(&p).unwrap(), ratio(1, 1));
        // ζ(0, β) = β/(1-β) -> 0
        let p = DimParams::new(ratio(0, 1), ratio(1, 1000)).unwrap();
        assert_eq!(zeta(&p).unwrap(), ratio(1, 999));
        for (a, b) in [
            (ratio(1, 3), ratio(1, 2)),
            (ratio(0, 1), ratio(1, 1)),
            (ratio(0, 1), ratio(0, 1)),
        ] {
            let p = DimParams::new(a, b).unwrap();
            assert!(matches!(zeta(&p), Err(Error::ParameterRegion(_))));
        }
    }

    #[test]
    fn dim_cases() {
        let d = |a, b| dim_e(&DimParams::new(a, b).unwrap(), 1e-10).unwrap();
        assert_eq!(d(ratio(0, 1), ratio(0, 1)).value.value, 1.0);
        assert_eq!(d(ratio(2, 5), ratio(1, 2)).case, DimCase::Zero);
        assert_eq!(d(ratio(1, 3), ratio(1, 2)).case, DimCase::Zero);
        assert_eq!(d(ratio(1, 2), ratio(1, 1)).value.value, 0.0);
        let mid = d(ratio(1, 5), ratio(1, 2));
        assert_eq!(mid.case, DimCase::Middle);
        assert_eq!(mid.zeta, Some(ratio(2, 1)));
        assert!((mid.value.value - 0.6924324587041706966760651).abs() < 1e-10);
        assert!(DimParams::new(ratio(1, 2), ratio(1, 3)).is_err());
        assert!(DimParams::new(ratio(-1, 2), ratio(1, 3)).is_err());
        assert!(DimParams::new(ratio(0, 1), ratio(3, 2)).is_err());
    }

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(0.9999999999999989, 1e-10), "1.0");
        assert_eq!(format_significant(0.69243245870417, 1e-6), "0.692432");
        assert_eq!(CertifiedValue::new(1.0, 1e-10).to_string(), "1.0 ± 1.0e-10");
    }
}
