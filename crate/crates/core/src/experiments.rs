//! Seeded Monte Carlo for the run-length law and the dimension surface.
//!
//! Digits of a Lebesgue-random point are i.i.d. with `P(d = t) = 1/(t(t-1))`,
//! so trials sample digits directly instead of iterating the map on exact
//! rationals. Trial `i` draws from ChaCha8 stream `i` of the configured seed;
//! parallel and serial runs produce identical output.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::Digit;
use crate::moran::{self, CertifiedValue, DimCase, DimParams};
use crate::rational::ExactRational;
use crate::runlength::max_run;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: usize,
    pub n: usize,
}

impl ExperimentConfig {
    pub fn new(seed: u64, trials: usize, n: usize) -> Result<Self> {
        if trials == 0 {
            return Err(Error::Domain("trials must be >= 1".into()));
        }
        if n < 2 {
            return Err(Error::Domain(format!("n must be >= 2, got {n}")));
        }
        Ok(ExperimentConfig { seed, trials, n })
    }

    fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

/// Inverse CDF of the digit law: `⌊1/(1 - draw)⌋ + 1`.
pub fn sample_digit(draw: f64) -> Result<Digit> {
    if !(draw > 0.0 && draw < 1.0) {
        return Err(Error::Domain(format!(
            "draw must lie in (0, 1), got {draw}"
        )));
    }
    let k = (1.0 / (1.0 - draw)).floor();
    // 1/(1-draw) <= 2^53 for every f64 below 1
    Digit::new(k as u64 + 1)
}

/// `n` i.i.d. digits from trial `trial` of `config`.
pub fn sample_digits(config: &ExperimentConfig, trial: usize) -> Vec<u64> {
    let mut rng = config.trial_rng(trial);
    (0..config.n)
        .map(|_| {
            let draw: f64 = rng.sample(Open01);
            sample_digit(draw)
                .expect("Open01 excludes the endpoints")
                .get()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
    pub iqr: f64,
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Per-trial `ℓ_n / log2 n`, in trial order.
pub fn lln_ratios(config: &ExperimentConfig) -> Vec<f64> {
    let log_n = (config.n as f64).log2();
    (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let digits = sample_digits(config, t);
            max_run(&digits).expect("n >= 2") as f64 / log_n
        })
        .collect()
}

/// Summary statistics of `ℓ_n / log2 n` over the configured trials.
pub fn lln_experiment(config: &ExperimentConfig) -> RatioSummary {
    let ratios = lln_ratios(config);
    let k = ratios.len() as f64;
    let mean = ratios.iter().sum::<f64>() / k;
    let var = if ratios.len() > 1 {
        ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let mut sorted = ratios;
    sorted.sort_by(f64::total_cmp);
    let q25 = quantile(&sorted, 0.25);
    let q75 = quantile(&sorted, 0.75);
    RatioSummary {
        n: config.n,
        trials: config.trials,
        seed: config.seed,
        mean,
        std_dev: var.sqrt(),
        min: sorted[0],
        q25,
        median: quantile(&sorted, 0.5),
        q75,
        max: sorted[sorted.len() - 1],
        iqr: q75 - q25,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceCell {
    pub alpha: ExactRational,
    pub beta: ExactRational,
    /// `None` for cells with `α > β`.
    pub case: Option<DimCase>,
    pub dim: Option<CertifiedValue>,
}

/// `dim_E(α, β)` on the grid `α, β ∈ {0, 1/(r-1), …, 1}`, row-major in α then β.
///
/// Middle-case cells whose residual tolerance is out of reach fall back to
/// [`moran::enclose_s`]; their error bound is then the certified bracket width.
pub fn dim_surface(resolution: usize, tol: f64) -> Result<Vec<SurfaceCell>> {
    if resolution < 2 {
        return Err(Error::Domain(format!(
            "grid resolution must be >= 2, got {resolution}"
        )));
    }
    moran::Precision::default().check(tol)?;
    let steps = (resolution - 1) as i64;
    let grid: Vec<(i64, i64)> = (0..=steps)
        .flat_map(|i| (0..=steps).map(move |j| (i, j)))
        .collect();
    grid.par_iter()
        .map(|&(i, j)| {
            let alpha = BigRational::new(BigInt::from(i), BigInt::from(steps));
            let beta = BigRational::new(BigInt::from(j), BigInt::from(steps));
            if i > j {
                return Ok(SurfaceCell {
                    alpha,
                    beta,
                    case: None,
                    dim: None,
                });
            }
            let params = DimParams::new(alpha.clone(), beta.clone())?;
            let (case, dim) = match moran::dim_e(&params, tol) {
                Ok(d) => (d.case, d.value),
                Err(e) if e.is_exhaustion() => {
                    let z = crate::rational::to_f64(&moran::zeta(&params)?);
                    (DimCase::Middle, moran::enclose_s(z, tol)?)
                }
                Err(e) => return Err(e),
            };
            Ok(SurfaceCell {
                alpha,
                beta,
                case: Some(case),
                dim: Some(dim),
            })
        })
        .collect()
}
