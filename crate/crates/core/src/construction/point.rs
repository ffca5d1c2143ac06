//! Digit strings of `G(M)`, the deletion map and the run-profile check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::schedule::{Role, Schedule};
use crate::error::{Error, Result};
use crate::expansion::DigitString;
use crate::runlength::run_trajectory;

/// How the free positions of a generated point are filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fill {
    Constant(u64),
    /// Uniform on `[2, M]`, ChaCha8 seeded from the value.
    Seeded(u64),
}

fn check_depth(sched: &Schedule, depth: usize) -> Result<()> {
    if depth > sched.point_horizon() {
        return Err(Error::HorizonExceeded {
            depth,
            horizon: sched.point_horizon(),
        });
    }
    Ok(())
}

/// Deleted positions `𝒥 ∩ [1, depth]`, ascending.
pub fn deletion_positions(sched: &Schedule, depth: usize) -> Result<Vec<usize>> {
    check_depth(sched, depth)?;
    let mut out = Vec::new();
    for j in 1..=depth {
        if sched.role(j)? == Role::Separator {
            out.push(j);
        }
    }
    Ok(out)
}

/// `t(n) = #(𝒥 ∩ [1, n])`.
pub fn deletion_count(sched: &Schedule, n: usize) -> Result<usize> {
    Ok(deletion_positions(sched, n)?.len())
}

/// A digit string of `G(M)` truncated at `depth`.
pub fn generate_point(sched: &Schedule, fill: Fill, depth: usize) -> Result<DigitString> {
    check_depth(sched, depth)?;
    let max = sched.max_digit();
    let mut rng = match fill {
        Fill::Constant(c) => {
            if !(2..=max).contains(&c) {
                return Err(Error::Domain(format!(
                    "constant fill {c} is outside [2, {max}]"
                )));
            }
            None
        }
        Fill::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut digits = Vec::with_capacity(depth);
    for j in 1..=depth {
        let d = match sched.role(j)? {
            Role::Separator => sched.separator(),
            Role::Forced => 2,
            Role::Free => match (&mut rng, fill) {
                (Some(rng), _) => rng.gen_range(2..=max),
                (None, Fill::Constant(c)) => c,
                (None, Fill::Seeded(_)) => unreachable!(),
            },
        };
        digits.push(d);
    }
    DigitString::new(digits)
}

/// Checks the digits of a `G(M)` string against the position roles.
pub fn validate_point(sched: &Schedule, digits: &[u64]) -> Result<()> {
    check_depth(sched, digits.len())?;
    for (i, &d) in digits.iter().enumerate() {
        let j = i + 1;
        let ok = match sched.role(j)? {
            Role::Separator => d == sched.separator(),
            Role::Forced => d == 2,
            Role::Free => (2..=sched.max_digit()).contains(&d),
        };
        if !ok {
            return Err(Error::StructuralViolation {
                position: j,
                reason: format!("digit {d} does not fit the {:?} role", sched.role(j)?),
            });
        }
    }
    Ok(())
}

/// The deletion map `f` on digit strings: drops every position of `𝒥`.
pub fn project_f(digits: &DigitString, sched: &Schedule) -> Result<DigitString> {
    validate_point(sched, digits)?;
    let mut out = Vec::with_capacity(digits.len());
    for (i, &d) in digits.iter().enumerate() {
        if sched.role(i + 1)? != Role::Separator {
            out.push(d);
        }
    }
    DigitString::new(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileMismatch {
    pub n: usize,
    pub block: usize,
    pub expected: usize,
    pub actual: usize,
}

/// Limit ratios of block `k`: `m_k/(n_k+m_k)` (tends to β) and
/// `m_k/(n_{k+1}+m_k)` (tends to α).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockRatios {
    pub k: usize,
    pub upper: f64,
    pub lower: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileReport {
    /// Blocks whose whole window `[n'_k+m_k, n'_{k+1}+m_{k+1})` fits in the string.
    pub blocks_checked: usize,
    pub first_mismatch: Option<ProfileMismatch>,
    pub ratios: Vec<BlockRatios>,
}

impl ProfileReport {
    pub fn matches(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Expected `ℓ_n` on the window of block `k` (1-based), by the piecewise
/// formula: `m_k` up to `n'_{k+1}+m_k`, then `n - n'_{k+1}`.
fn expected_ell(sched: &Schedule, k: usize, n: usize) -> usize {
    let m_k = sched.m()[k - 1] as usize;
    let next = sched.n_prime()[k] as usize;
    if n <= next + m_k {
        m_k
    } else {
        n - next
    }
}

pub fn block_ratios(sched: &Schedule) -> Vec<BlockRatios> {
    (1..=sched.k_max())
        .map(|k| {
            let m = sched.m()[k - 1];
            let n = sched.n()[k - 1];
            let next = sched.n_after(k);
            BlockRatios {
                k,
                upper: m as f64 / (n + m) as f64,
                lower: m as f64 / (next as f64 + m as f64),
            }
        })
        .collect()
}

/// Compares `ℓ_n` of `digits` with the piecewise run profile on every
/// complete block.
pub fn run_profile_check(digits: &DigitString, sched: &Schedule) -> Result<ProfileReport> {
    validate_point(sched, digits)?;
    let traj = run_trajectory(digits)?;
    let len = digits.len();
    let mut blocks_checked = 0;
    let mut first_mismatch = None;
    'blocks: for k in 1..sched.k_max() {
        let start = (sched.n_prime()[k - 1] + sched.m()[k - 1]) as usize;
        let end = (sched.n_prime()[k] + sched.m()[k]) as usize; // exclusive
        if end - 1 > len {
            break;
        }
        for n in start..end {
            let expected = expected_ell(sched, k, n);
            let actual = traj.ell(n).expect("n is within the string");
            if expected != actual {
                first_mismatch = Some(ProfileMismatch {
                    n,
                    block: k,
                    expected,
                    actual,
                });
                break 'blocks;
            }
        }
        blocks_checked += 1;
    }
    Ok(ProfileReport {
        blocks_checked,
        first_mismatch,
        ratios: block_ratios(sched),
    })
}
