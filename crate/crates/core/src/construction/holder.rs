//! Empirical Hölder exponent of the deletion map `f`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::point::{deletion_count, project_f};
use super::schedule::{Role, Schedule};
use crate::error::{Error, Result};
use crate::expansion::{evaluate, DigitString};
use crate::rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderFit {
    /// Least-squares slope of `ln|f(x)-f(y)|` against `ln|x-y|`.
    pub slope: f64,
    pub intercept: f64,
    pub slope_std_error: f64,
    /// Residual standard deviation of the fit.
    pub residual_spread: f64,
    pub pairs: usize,
    /// Sampled pairs with no free position to split on, dropped.
    pub skipped: usize,
    /// `t(depth) · ln(2M(2M-1))`, the log of the worst inflation from deleted digits.
    pub log_inflation_bound: f64,
    /// Pairs breaking `|f(x)-f(y)| <= 2M²(M-1)(2M+1) (2M(2M-1))^{t(n)} |x-y|`,
    /// `n` the common prefix length; only pairs with `n + 2 <= depth` are tested.
    pub bound_violations: usize,
    pub bound_checked: usize,
}

struct Pair {
    log_dx: f64,
    log_df: f64,
    /// `None` when the pair is too shallow for the inequality.
    within_bound: Option<bool>,
}

fn sample_free(rng: &mut ChaCha8Rng, max: u64) -> u64 {
    rng.gen_range(2..=max)
}

fn sample_pair(sched: &Schedule, depth: usize, seed: u64, index: u64) -> Result<Option<Pair>> {
    let max = sched.max_digit();
    let mut rx = ChaCha8Rng::seed_from_u64(seed);
    rx.set_stream(2 * index);
    let mut ry = ChaCha8Rng::seed_from_u64(seed);
    ry.set_stream(2 * index + 1);
    let roles: Vec<Role> = (1..=depth).map(|j| sched.role(j)).collect::<Result<_>>()?;
    let free: Vec<usize> = (0..depth).filter(|&i| roles[i] == Role::Free).collect();
    if free.is_empty() {
        return Ok(None);
    }
    // x and y agree up to a uniformly chosen free position and differ there
    let split = free[rx.gen_range(0..free.len())];
    let mut x = Vec::with_capacity(depth);
    let mut y = Vec::with_capacity(depth);
    for (i, role) in roles.iter().enumerate() {
        let (dx, dy) = match role {
            Role::Separator => (sched.separator(), sched.separator()),
            Role::Forced => (2, 2),
            Role::Free => {
                let dx = sample_free(&mut rx, max);
                let dy = match i.cmp(&split) {
                    std::cmp::Ordering::Less => dx,
                    std::cmp::Ordering::Equal => {
                        let d = ry.gen_range(2..max);
                        if d >= dx {
                            d + 1
                        } else {
                            d
                        }
                    }
                    std::cmp::Ordering::Greater => sample_free(&mut ry, max),
                };
                (dx, dy)
            }
        };
        x.push(dx);
        y.push(dy);
    }
    let common = split;
    let x = DigitString::new(x)?;
    let y = DigitString::new(y)?;
    let dx = (evaluate(&x) - evaluate(&y)).abs();
    let df = (evaluate(&project_f(&x, sched)?) - evaluate(&project_f(&y, sched)?)).abs();
    let within_bound = if common + 2 <= depth {
        let m = BigInt::from(max);
        let c = BigInt::from(2u32) * &m * &m * (&m - 1u32) * (BigInt::from(2u32) * &m + 1u32);
        let inflation = num_traits::pow(
            BigInt::from(2 * max * (2 * max - 1)),
            deletion_count(sched, common)?,
        );
        Some(df <= BigRational::from_integer(c * inflation) * &dx)
    } else {
        None
    };
    Ok(Some(Pair {
        log_dx: rational::ln_abs(&dx),
        log_df: rational::ln_abs(&df),
        within_bound,
    }))
}

/// Fits the Hölder exponent of `f` on `pair_count` seeded pairs of `G(M)`
/// points truncated at `depth`.
///
/// Pair `i` uses ChaCha8 stream `2i` for `x` and the split position, and
/// stream `2i+1` for the digits of `y` from the split on, so the result does
/// not depend on thread scheduling. The split is uniform over the free
/// positions; `x` and `y` share every digit before it and differ at it.
pub fn holder_estimate(
    sched: &Schedule,
    depth: usize,
    pair_count: usize,
    seed: u64,
) -> Result<HolderFit> {
    if depth < 2 || depth > sched.point_horizon() {
        return Err(Error::HorizonExceeded {
            depth,
            horizon: sched.point_horizon(),
        });
    }
    if pair_count < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 pairs, got {pair_count}"
        )));
    }
    let sampled: Vec<Option<Pair>> = (0..pair_count as u64)
        .into_par_iter()
        .map(|i| sample_pair(sched, depth, seed, i))
        .collect::<Result<_>>()?;
    let skipped = sampled.iter().filter(|p| p.is_none()).count();
    let pairs: Vec<Pair> = sampled.into_iter().flatten().collect();
    if pairs.len() < 3 {
        return Err(Error::DegenerateSample(format!(
            "only {} distinct pairs out of {pair_count}",
            pairs.len()
        )));
    }

    let k = pairs.len() as f64;
    let mean_x = pairs.iter().map(|p| p.log_dx).sum::<f64>() / k;
    let mean_y = pairs.iter().map(|p| p.log_df).sum::<f64>() / k;
    let sxx: f64 = pairs.iter().map(|p| (p.log_dx - mean_x).powi(2)).sum();
    let sxy: f64 = pairs
        .iter()
        .map(|p| (p.log_dx - mean_x) * (p.log_df - mean_y))
        .sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateSample(
            "all pairs are equally far apart".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = pairs
        .iter()
        .map(|p| (p.log_df - intercept - slope * p.log_dx).powi(2))
        .sum();
    let residual_var = sse / (k - 2.0);
    let max = sched.max_digit() as f64;
    let checked: Vec<bool> = pairs.iter().filter_map(|p| p.within_bound).collect();
    Ok(HolderFit {
        slope,
        intercept,
        slope_std_error: (residual_var / sxx).sqrt(),
        residual_spread: residual_var.sqrt(),
        pairs: pairs.len(),
        skipped,
        log_inflation_bound: deletion_count(sched, depth)? as f64
            * (2.0 * max * (2.0 * max - 1.0)).ln(),
        bound_violations: checked.iter().filter(|&&ok| !ok).count(),
        bound_checked: checked.len(),
    })
}
