//! Maximal run-length function `ℓ_n`: the length of the longest block of
//! equal consecutive digits among the first `n`.

use serde::Serialize;

use crate::error::{Error, Result};

/// `values[i] = ℓ_{i+1}`.
///
/// Non-decreasing, starts at 1, and grows by at most one per step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunTrajectory(Vec<usize>);

impl RunTrajectory {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ℓ_n` for 1-based `n`.
    pub fn ell(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// Validates the trajectory invariants on raw values.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        if values.first() != Some(&1) {
            return Err(Error::Domain("a run trajectory starts at 1".into()));
        }
        for (i, pair) in values.windows(2).enumerate() {
            if pair[1] != pair[0] && pair[1] != pair[0] + 1 {
                return Err(Error::Domain(format!(
                    "trajectory step {} -> {} at n = {} is not 0 or +1",
                    pair[0],
                    pair[1],
                    i + 2
                )));
            }
        }
        Ok(RunTrajectory(values))
    }
}

/// Longest constant block. With no repeated neighbours this is 1.
pub fn max_run<T: PartialEq>(digits: &[T]) -> Result<usize> {
    if digits.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut best = 1;
    let mut current = 1;
    for pair in digits.windows(2) {
        if pair[0] == pair[1] {
            current += 1;
            best = best.max(current);
        } else {
            current = 1;
        }
    }
    Ok(best)
}

/// `ℓ_1, …, ℓ_n` in one streaming pass.
pub fn run_trajectory<T: PartialEq>(digits: &[T]) -> Result<RunTrajectory> {
    if digits.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut values = Vec::with_capacity(digits.len());
    let mut best = 0;
    let mut current = 0;
    for (i, d) in digits.iter().enumerate() {
        if i > 0 && digits[i - 1] == *d {
            current += 1;
        } else {
            current = 1;
        }
        best = best.max(current);
        values.push(best);
    }
    Ok(RunTrajectory(values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// `ℓ_n / n`
    Linear,
    /// `ℓ_n / log2 n`, only for `n >= 2`
    Log2,
}

/// One row of the `n, ell_n, ratio` table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub ell_n: usize,
    pub ratio: f64,
}

pub fn growth_ratios(traj: &RunTrajectory, scale: Scale) -> Vec<GrowthPoint> {
    traj.0
        .iter()
        .enumerate()
        .map(|(i, &ell_n)| (i + 1, ell_n))
        .filter(|&(n, _)| scale == Scale::Linear || n >= 2)
        .map(|(n, ell_n)| {
            let denom = match scale {
                Scale::Linear => n as f64,
                Scale::Log2 => (n as f64).log2(),
            };
            GrowthPoint {
                n,
                ell_n,
                ratio: ell_n as f64 / denom,
            }
        })
        .collect()
}

/// Min and max over the last `tail_fraction` of the ratios.
///
/// A finite-sample stand-in for (liminf, limsup); not a limit.
pub fn inf_sup_estimate(ratios: &[f64], tail_fraction: f64) -> Result<(f64, f64)> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::Domain(format!(
            "tail fraction must lie in (0, 1], got {tail_fraction}"
        )));
    }
    let window = (ratios.len() as f64 * tail_fraction).ceil() as usize;
    if window == 0 {
        return Err(Error::Domain("empty tail window".into()));
    }
    let tail = &ratios[ratios.len() - window..];
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}
