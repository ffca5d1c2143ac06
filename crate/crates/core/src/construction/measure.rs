//! The mass distribution `μ` on fundamental intervals.
//!
//! Block `j` of a word is the segment `(n_{j-1}+m_{j-1}, n_j+m_j]`; every digit
//! `d` in it carries weight `(d(d-1))^{-s_j}` with `s_j = s_M(u_j)`. For a word
//! ending inside block `J` the not-yet-chosen positions of that block are
//! summed out in closed form: `Z_J = Σ_{t=2}^M (t(t-1))^{-s_J}` per free
//! position and `2^{-s_J}` per forced one. All arithmetic is in the log domain.

use rayon::prelude::*;
use serde::Serialize;

use super::admissible::{enumerate_d_n, fundamental_interval, AdmissibleWord};
use super::schedule::Schedule;
use crate::error::{Error, Result};
use crate::moran::{self, CertifiedValue, SolverConfig};
use crate::rational;

const EPS: f64 = f64::EPSILON;

#[derive(Debug, Clone)]
pub struct MassDistribution<'a> {
    schedule: &'a Schedule,
    /// `s_M(u_j)` per block.
    exponents: Vec<CertifiedValue>,
    log_z: Vec<f64>,
}

fn ln_weight(d: u64) -> f64 {
    let d = d as f64;
    d.ln() + (d - 1.0).ln()
}

impl<'a> MassDistribution<'a> {
    pub fn new(schedule: &'a Schedule, tol: f64) -> Result<Self> {
        MassDistribution::with_config(schedule, tol, &SolverConfig::default())
    }

    pub fn with_config(schedule: &'a Schedule, tol: f64, config: &SolverConfig) -> Result<Self> {
        let m = schedule.max_digit();
        let exponents = schedule
            .u()
            .iter()
            .map(|u| moran::solve_s_m_with(rational::to_f64(u), m, tol, config))
            .collect::<Result<Vec<_>>>()?;
        let log_z = exponents
            .iter()
            .map(|s| {
                let z: f64 = (2..=m).map(|t| (-s.value * ln_weight(t)).exp()).sum();
                z.ln()
            })
            .collect();
        Ok(MassDistribution {
            schedule,
            exponents,
            log_z,
        })
    }

    pub fn schedule(&self) -> &'a Schedule {
        self.schedule
    }

    pub fn exponents(&self) -> &[CertifiedValue] {
        &self.exponents
    }

    /// `ln μ(J_n(w))` and an absolute bound on its error.
    pub fn log_mu(&self, word: &AdmissibleWord<'_>) -> Result<(f64, f64)> {
        if !std::ptr::eq(word.schedule(), self.schedule) && word.schedule() != self.schedule {
            return Err(Error::Domain("word belongs to a different schedule".into()));
        }
        let n = word.depth();
        if n == 0 {
            return Ok((0.0, 0.0));
        }
        let sched = self.schedule;
        let block = sched.block_of(n).ok_or(Error::HorizonExceeded {
            depth: n,
            horizon: sched.word_horizon(),
        })?;
        let digits = word.digits();
        let ln_mm1 = ln_weight(sched.max_digit());

        let mut log = 0.0f64;
        let mut magnitude = 0.0f64;
        let mut perturbation = 0.0f64;
        let mut start = 0usize;
        for j in 1..=block {
            let end = (sched.n()[j - 1] + sched.m()[j - 1]) as usize;
            let s = &self.exponents[j - 1];
            let upto = end.min(n);
            let a: f64 = digits[start..upto].iter().map(|&d| ln_weight(d)).sum();
            log -= s.value * a;
            magnitude += s.value * a;
            let mut sensitivity = a;
            if j == block {
                let forced = (upto + 1..=end).filter(|&p| sched.is_forced(p)).count() as f64;
                let free = (end - upto) as f64 - forced;
                let z_term = free * self.log_z[j - 1];
                let two_term = forced * s.value * std::f64::consts::LN_2;
                log += z_term - two_term;
                magnitude += z_term.abs() + two_term;
                // |d ln Z / ds| <= ln(M(M-1))
                sensitivity += free * ln_mm1 + forced * std::f64::consts::LN_2;
            }
            perturbation += sensitivity * s.error_bound;
            start = end;
        }
        let rounding = EPS * (4.0 * n as f64 + 8.0) * magnitude;
        Ok((log, perturbation + rounding))
    }

    /// `μ(J_n(w))` with a bound covering the solver error in each `s_j`.
    pub fn measure_mu(&self, word: &AdmissibleWord<'_>) -> Result<CertifiedValue> {
        let (log, err) = self.log_mu(word)?;
        let value = log.exp();
        Ok(CertifiedValue::new(
            value,
            value * err.exp_m1() + EPS * value,
        ))
    }

    /// `(k, s_M(u_k))` for the first `k` from which every later block satisfies
    /// `|s_M(u_k) - s_M(ζ)| < ε log 2 / log(M(M-1))`, if any.
    pub fn select_k0(&self, target: &CertifiedValue, eps: f64) -> Option<usize> {
        let threshold = eps * std::f64::consts::LN_2 / ln_weight(self.schedule.max_digit());
        let ok: Vec<bool> = self
            .exponents
            .iter()
            .map(|s| {
                (s.value - target.value).abs() + s.error_bound + target.error_bound < threshold
            })
            .collect();
        let first_bad_from_end = ok.iter().rposition(|&b| !b);
        match first_bad_from_end {
            None => Some(1),
            Some(i) if i + 1 < ok.len() => Some(i + 2),
            Some(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassCheck {
    pub depth: usize,
    pub words: usize,
    pub total_mass: f64,
    /// Declared bound on the total mass.
    pub total_error_bound: f64,
    /// Largest `|μ(parent) - Σ μ(children)|` over the level above `depth`.
    pub max_additivity_error: f64,
}

/// Total mass of `D_n` and parent/child additivity between depths `n-1` and `n`.
pub fn mass_check(dist: &MassDistribution<'_>, n: usize, budget: u128) -> Result<MassCheck> {
    let sched = dist.schedule();
    let words = enumerate_d_n(sched, n, budget)?;
    let masses: Vec<CertifiedValue> = words
        .par_iter()
        .map(|w| dist.measure_mu(w))
        .collect::<Result<_>>()?;
    let total_mass: f64 = masses.iter().map(|m| m.value).sum();
    let total_error_bound: f64 =
        masses.iter().map(|m| m.error_bound).sum::<f64>() + EPS * masses.len() as f64;

    let mut max_additivity_error = 0.0f64;
    if n > 1 {
        // children of a parent are contiguous in lexicographic order
        let mut i = 0;
        while i < words.len() {
            let prefix = &words[i].digits()[..n - 1];
            let mut j = i;
            let mut children = 0.0;
            while j < words.len() && &words[j].digits()[..n - 1] == prefix {
                children += masses[j].value;
                j += 1;
            }
            let parent = AdmissibleWord::new(sched, words[i].digits().prefix(n - 1))?;
            let p = dist.measure_mu(&parent)?.value;
            max_additivity_error = max_additivity_error.max((p - children).abs());
            i = j;
        }
    } else {
        max_additivity_error = (1.0 - total_mass).abs();
    }
    Ok(MassCheck {
        depth: n,
        words: words.len(),
        total_mass,
        total_error_bound,
        max_additivity_error,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassLengthReport {
    pub depth: usize,
    pub words: usize,
    /// `min ln μ(J) / ln |J|` over `D_n`.
    pub min_exponent: f64,
    /// The exponent the bound is tested against, `s_M(ζ) - ε`.
    pub target_exponent: f64,
    /// `max (ln μ(J) - target·ln |J|)`: log of the smallest constant `C`
    /// with `μ(J) <= C |J|^target` on this level.
    pub log_constant: f64,
    pub k0: Option<usize>,
}

/// Mass-versus-length statistics of all fundamental intervals of order `n`.
pub fn mass_length_report(
    dist: &MassDistribution<'_>,
    s_zeta: &CertifiedValue,
    eps: f64,
    n: usize,
    budget: u128,
) -> Result<MassLengthReport> {
    let sched = dist.schedule();
    let words = enumerate_d_n(sched, n, budget)?;
    let target = s_zeta.value - eps;
    let rows: Vec<(f64, f64)> = words
        .par_iter()
        .map(|w| {
            let (log_mu, _) = dist.log_mu(w)?;
            let log_len = rational::ln_abs(&fundamental_interval(w)?.length);
            Ok((log_mu, log_len))
        })
        .collect::<Result<_>>()?;
    let min_exponent = rows
        .iter()
        .map(|(mu, len)| mu / len)
        .fold(f64::INFINITY, f64::min);
    let log_constant = rows
        .iter()
        .map(|(mu, len)| mu - target * len)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(MassLengthReport {
        depth: n,
        words: words.len(),
        min_exponent,
        target_exponent: target,
        log_constant,
        k0: dist.select_k0(s_zeta, eps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{cylinder_length, DigitString};
    use crate::moran::DimParams;
    use crate::rational::ratio;

    fn sched() -> Schedule {
        let params = DimParams::new(ratio(1, 5), ratio(1, 2)).unwrap();
        Schedule::build(&params, 3, 3).unwrap()
    }

    #[test]
    fn first_block_total_mass_is_one() {
        let s = sched();
        let dist = MassDistribution::new(&s, 1e-13).unwrap();
        let check = mass_check(&dist, 14, 1 << 20).unwrap();
        assert_eq!(check.words, 256);
        assert!((check.total_mass - 1.0).abs() < 1e-10, "{check:?}");
        assert!(check.max_additivity_error < 1e-12);
    }

    #[test]
    fn block_boundary_matches_product_formula() {
        // Brute force: every word of D_14 gets |I_14(w)|^{s_1}, computed exactly.
        let s = sched();
        let dist = MassDistribution::new(&s, 1e-13).unwrap();
        let s1 = dist.exponents()[0].value;
        for w in enumerate_d_n(&s, 14, 1 << 20).unwrap().iter().step_by(37) {
            let len = cylinder_length(w.digits()).unwrap();
            let expected = (s1 * rational::ln_abs(&len)).exp();
            let mu = dist.measure_mu(w).unwrap();
            assert!((mu.value - expected).abs() < 1e-13 * expected.max(1e-300) + mu.error_bound);
        }
        // the all-minimal word: (1/2)^{14 s_1}
        let all_two = AdmissibleWord::new(&s, DigitString::new(vec![2; 14]).unwrap()).unwrap();
        let mu = dist.measure_mu(&all_two).unwrap();
        assert!((mu.value - 0.5f64.powf(14.0 * s1)).abs() < 1e-14);
    }

    #[test]
    fn intermediate_depth_is_marginal_sum() {
        let s = sched();
        let dist = MassDistribution::new(&s, 1e-13).unwrap();
        // μ at depth 3 equals the brute-force sum over its D_14 extensions
        let prefix = [3u64, 2, 3];
        let w = AdmissibleWord::new(&s, DigitString::new(prefix.to_vec()).unwrap()).unwrap();
        let brute: f64 = enumerate_d_n(&s, 14, 1 << 20)
            .unwrap()
            .iter()
            .filter(|x| x.digits()[..3] == prefix)
            .map(|x| dist.measure_mu(x).unwrap().value)
            .sum();
        let mu = dist.measure_mu(&w).unwrap().value;
        assert!((mu - brute).abs() < 1e-14, "{mu} vs {brute}");
    }

    #[test]
    fn k0_selection() {
        let s = {
            let params = DimParams::new(ratio(1, 5), ratio(1, 2)).unwrap();
            Schedule::build(&params, 3, 8).unwrap()
        };
        let dist = MassDistribution::new(&s, 1e-12).unwrap();
        let target = moran::solve_s_m(2.0, 3, 1e-12).unwrap();
        // u_1 = 3/4 is far from ζ = 2, so K₀ > 1 for a small ε
        let k0 = dist.select_k0(&target, 0.1).unwrap();
        assert!(k0 > 1 && k0 <= 8);
        assert!(dist.select_k0(&target, 1e-9).is_none());
        assert_eq!(dist.select_k0(&target, 10.0), Some(1));
    }
}
