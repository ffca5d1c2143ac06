//! Admissible words `D_n`, their fundamental intervals `J_n` and the gaps
//! between same-order intervals.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::schedule::Schedule;
use crate::error::{Error, Result};
use crate::expansion::{cylinder, DigitString, Interval};
use crate::rational::ExactRational;

/// Default cap on words produced by one enumeration.
pub const DEFAULT_WORD_BUDGET: u128 = 1 << 22;

/// A word of `D_n`: digits forced to 2 on `[n_k+1, n_k+m_k]`, in `[2, M]` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleWord<'a> {
    schedule: &'a Schedule,
    digits: DigitString,
}

impl<'a> AdmissibleWord<'a> {
    pub fn new(schedule: &'a Schedule, digits: DigitString) -> Result<Self> {
        if digits.len() > schedule.word_horizon() {
            return Err(Error::HorizonExceeded {
                depth: digits.len(),
                horizon: schedule.word_horizon(),
            });
        }
        for (i, &d) in digits.iter().enumerate() {
            let j = i + 1;
            let ok = if schedule.is_forced(j) {
                d == 2
            } else {
                (2..=schedule.max_digit()).contains(&d)
            };
            if !ok {
                return Err(Error::StructuralViolation {
                    position: j,
                    reason: format!("digit {d} is not admissible here"),
                });
            }
        }
        Ok(AdmissibleWord { schedule, digits })
    }

    pub fn schedule(&self) -> &'a Schedule {
        self.schedule
    }

    pub fn digits(&self) -> &DigitString {
        &self.digits
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }
}

/// Number of free positions in `[1, n]`.
pub fn free_count(sched: &Schedule, n: usize) -> usize {
    (1..=n).filter(|&j| !sched.is_forced(j)).count()
}

/// `|D_n| = (M-1)^{free(n)}`.
pub fn count_d_n(sched: &Schedule, n: usize) -> u128 {
    let free = free_count(sched, n) as u32;
    (sched.max_digit() as u128 - 1)
        .checked_pow(free)
        .unwrap_or(u128::MAX)
}

/// All words of `D_n` in lexicographic order.
pub fn enumerate_d_n(sched: &Schedule, n: usize, budget: u128) -> Result<Vec<AdmissibleWord<'_>>> {
    if n == 0 {
        return Err(Error::Domain("depth must be >= 1".into()));
    }
    if n > sched.word_horizon() {
        return Err(Error::HorizonExceeded {
            depth: n,
            horizon: sched.word_horizon(),
        });
    }
    let count = count_d_n(sched, n);
    if count > budget {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget,
        });
    }
    let free: Vec<usize> = (0..n).filter(|&i| !sched.is_forced(i + 1)).collect();
    let max = sched.max_digit();
    let mut current = vec![2u64; n];
    let mut out = Vec::with_capacity(count as usize);
    loop {
        out.push(AdmissibleWord {
            schedule: sched,
            digits: DigitString::new(current.clone())?,
        });
        // odometer over the free positions, last one fastest
        let mut advanced = false;
        for &i in free.iter().rev() {
            if current[i] < max {
                current[i] += 1;
                advanced = true;
                break;
            }
            current[i] = 2;
        }
        if !advanced {
            break;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalInterval {
    pub digits: DigitString,
    pub interval: Interval,
    pub length: ExactRational,
}

/// `J_n(w)`: the union of the admissible child cylinders of `w`.
///
/// Children of `I_n(w)` with digit `d` cover `(L + |I|/d, L + |I|/(d-1)]`, so
/// the union is `(L + |I|/M, L + |I|]` when position `n+1` is free and
/// `(L + |I|/2, L + |I|]` when it is forced.
pub fn fundamental_interval(word: &AdmissibleWord<'_>) -> Result<FundamentalInterval> {
    let sched = word.schedule;
    let n = word.depth();
    let base = cylinder(&word.digits)?;
    let len = base.length();
    let low_digit = if sched.is_forced(n + 1) {
        2
    } else {
        sched.max_digit()
    };
    let left = base.left() + &len / BigRational::from_integer(BigInt::from(low_digit));
    let interval = Interval::new(left, base.right().clone())?;
    Ok(FundamentalInterval {
        digits: word.digits.clone(),
        length: interval.length(),
        interval,
    })
}

/// One row of a same-depth gap table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapEntry {
    pub interval: FundamentalInterval,
    /// `None` when the word has no same-depth neighbour.
    pub gap: Option<ExactRational>,
}

/// Fundamental intervals of all of `D_n` with their gap to the nearest
/// distinct same-order interval, in lexicographic word order.
pub fn gap_table(sched: &Schedule, n: usize, budget: u128) -> Result<Vec<GapEntry>> {
    let words = enumerate_d_n(sched, n, budget)?;
    let intervals: Vec<FundamentalInterval> = words
        .iter()
        .map(fundamental_interval)
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| {
        intervals[a]
            .interval
            .left()
            .cmp(intervals[b].interval.left())
    });
    let mut gaps: Vec<Option<ExactRational>> = vec![None; intervals.len()];
    for (pos, &i) in order.iter().enumerate() {
        let here = &intervals[i].interval;
        let neighbours = [
            pos.checked_sub(1),
            Some(pos + 1).filter(|&q| q < order.len()),
        ];
        gaps[i] = neighbours
            .iter()
            .flatten()
            .map(|&q| here.distance_to(&intervals[order[q]].interval))
            .min();
    }
    Ok(intervals
        .into_iter()
        .zip(gaps)
        .map(|(interval, gap)| GapEntry { interval, gap })
        .collect())
}

/// Distance from `J_n(word)` to the nearest other interval of the same order.
pub fn gap(word: &AdmissibleWord<'_>, budget: u128) -> Result<Option<ExactRational>> {
    let table = gap_table(word.schedule, word.depth(), budget)?;
    Ok(table
        .into_iter()
        .find(|e| e.interval.digits == word.digits)
        .and_then(|e| e.gap))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapSummary {
    pub depth: usize,
    pub words: usize,
    /// `min gap·(M-1)/|J|` over the level, exact; the bound holds iff it is `>= 1`.
    pub min_ratio: String,
    pub min_ratio_f64: f64,
    pub violations: usize,
}

/// Checks `gap >= |J|/(M-1)` exactly on every word of `D_n`.
pub fn gap_check(sched: &Schedule, n: usize, budget: u128) -> Result<GapSummary> {
    let table = gap_table(sched, n, budget)?;
    let scale = BigRational::from_integer(BigInt::from(sched.max_digit() - 1));
    let mut violations = 0;
    let mut min_ratio: Option<ExactRational> = None;
    for e in &table {
        let Some(g) = &e.gap else { continue };
        let ratio = g * &scale / &e.interval.length;
        if ratio < BigRational::from_integer(1.into()) {
            violations += 1;
        }
        if min_ratio.as_ref().is_none_or(|m| &ratio < m) {
            min_ratio = Some(ratio);
        }
    }
    let min_ratio = min_ratio.ok_or_else(|| {
        Error::DegenerateSample(format!("depth {n} has a single fundamental interval"))
    })?;
    Ok(GapSummary {
        depth: n,
        words: table.len(),
        min_ratio_f64: crate::rational::to_f64(&min_ratio),
        min_ratio: crate::rational::format_rational(&min_ratio),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::cylinder_length;
    use crate::moran::DimParams;
    use crate::rational::ratio;

    fn sched() -> Schedule {
        let params = DimParams::new(ratio(1, 5), ratio(1, 2)).unwrap();
        Schedule::build(&params, 3, 3).unwrap()
    }

    fn word<'a>(s: &'a Schedule, d: &[u64]) -> AdmissibleWord<'a> {
        AdmissibleWord::new(s, DigitString::new(d.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn counts() {
        let s = sched();
        assert_eq!(enumerate_d_n(&s, 8, 1 << 20).unwrap().len(), 256);
        assert_eq!(enumerate_d_n(&s, 14, 1 << 20).unwrap().len(), 256);
        assert_eq!(count_d_n(&s, 42), 1 << 18);
        assert!(matches!(
            enumerate_d_n(&s, 20, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_is_lexicographic_and_admissible() {
        let s = sched();
        let words = enumerate_d_n(&s, 16, 1 << 20).unwrap();
        assert_eq!(words.len(), 1 << 10);
        for pair in words.windows(2) {
            assert!(pair[0].digits().as_slice() < pair[1].digits().as_slice());
        }
        for w in &words {
            assert!(AdmissibleWord::new(&s, w.digits().clone()).is_ok());
        }
    }

    #[test]
    fn rejects_inadmissible() {
        let s = sched();
        let mut d = vec![2u64; 10];
        d[8] = 3;
        assert!(AdmissibleWord::new(&s, DigitString::new(d).unwrap()).is_err());
        assert!(AdmissibleWord::new(&s, DigitString::new(vec![4]).unwrap()).is_err());
    }

    #[test]
    fn length_dichotomy() {
        let s = sched();
        for n in 1..=20 {
            for w in enumerate_d_n(&s, n, 1 << 20).unwrap() {
                let j = fundamental_interval(&w).unwrap();
                let base = cylinder_length(w.digits()).unwrap();
                let factor = if s.is_forced(n + 1) {
                    ratio(1, 2)
                } else {
                    ratio(2, 3)
                };
                assert_eq!(j.length, base * factor);
                let parent = cylinder(w.digits()).unwrap();
                assert!(j.interval.is_subset_of(&parent));
            }
        }
    }

    #[test]
    fn nesting() {
        let s = sched();
        let parent = fundamental_interval(&word(&s, &[3, 2])).unwrap();
        for d in 2..=3 {
            let child = fundamental_interval(&word(&s, &[3, 2, d])).unwrap();
            assert!(child.interval.is_subset_of(&parent.interval));
        }
    }

    #[test]
    fn depth_one_gap() {
        let s = sched();
        // J_1(2) = (1/2 + 1/6, 1], J_1(3) = (1/3 + 1/18, 1/2]: gap 1/6 >= min length / 2
        let g = gap(&word(&s, &[2]), 100).unwrap().unwrap();
        assert_eq!(g, ratio(1, 6));
        let j3 = fundamental_interval(&word(&s, &[3])).unwrap();
        assert_eq!(j3.length, ratio(1, 9));
        assert!(g >= j3.length / ratio(2, 1));
    }

    #[test]
    fn gaps_hold_through_forced_run() {
        let s = sched();
        for n in 1..=16 {
            let summary = gap_check(&s, n, 1 << 20).unwrap();
            assert_eq!(summary.violations, 0, "depth {n}: {summary:?}");
        }
    }
}
