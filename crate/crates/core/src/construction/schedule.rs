use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::DEFAULT_DIGIT_BUDGET;
use crate::moran::DimParams;
use crate::rational::{self, format_rational, ExactRational};

/// Role of a position in a `G(M)` digit string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Free,
    /// Part of a forced run of 2's.
    Forced,
    /// Deleted position carrying the separator digit `2M`.
    Separator,
}

/// The integer sequences driving the construction, indexed from `k = 1`
/// (stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    alpha: ExactRational,
    beta: ExactRational,
    max_digit: u64,
    k_max: usize,
    n: Vec<u64>,
    m: Vec<u64>,
    p: Vec<u64>,
    n_prime: Vec<u64>,
    u: Vec<ExactRational>,
    /// `n_{k_max+1}`, saturated at `u64::MAX`.
    n_next: u64,
}

fn floor_big(x: &ExactRational) -> BigInt {
    x.floor().to_integer()
}

impl Schedule {
    /// Builds the schedule with the default digit budget.
    pub fn build(params: &DimParams, max_digit: u64, k_max: usize) -> Result<Self> {
        Schedule::build_with_budget(params, max_digit, k_max, DEFAULT_DIGIT_BUDGET as u64)
    }

    /// `n_{k_max} + m_{k_max}` must not exceed `digit_budget`.
    pub fn build_with_budget(
        params: &DimParams,
        max_digit: u64,
        k_max: usize,
        digit_budget: u64,
    ) -> Result<Self> {
        if !params.is_middle_case() {
            return Err(Error::ParameterRegion(format!(
                "the construction needs 0 <= alpha < beta/(1+beta) < beta < 1, got alpha = {}, beta = {}",
                params.alpha(),
                params.beta()
            )));
        }
        if max_digit < 3 {
            return Err(Error::Domain(format!("M must be >= 3, got {max_digit}")));
        }
        if k_max == 0 {
            return Err(Error::Domain("k_max must be >= 1".into()));
        }
        let alpha = params.alpha().clone();
        let beta = params.beta().clone();
        let one = BigRational::one();
        let odds = &beta / (&one - &beta);

        // base_k: r^k for α > 0, 2^{k!}/(1-β)^k for α = 0
        let base = |k: usize| -> ExactRational {
            if alpha.is_zero() {
                let fact: usize = (1..=k).product();
                let two_pow = BigRational::from_integer(num_traits::pow(BigInt::from(2u32), fact));
                two_pow / rational::pow(&(&one - &beta), k as u32)
            } else {
                let r = &beta * (&one - &alpha) / (&alpha * (&one - &beta));
                rational::pow(&r, k as u32)
            }
        };

        let mut n_big = Vec::with_capacity(k_max + 1);
        let mut m_big = Vec::with_capacity(k_max + 1);
        for k in 1..=k_max + 1 {
            let b = base(k);
            n_big.push(floor_big(&b) + BigInt::from(4 * k));
            m_big.push(floor_big(&(&odds * &b)) + BigInt::from(2u32));
            let end = &n_big[k - 1] + &m_big[k - 1];
            if k <= k_max && end > BigInt::from(digit_budget) {
                return Err(Error::BudgetExceeded {
                    needed: end.to_u128().unwrap_or(u128::MAX),
                    budget: digit_budget as u128,
                });
            }
        }

        for k in 0..n_big.len().saturating_sub(1) {
            let (nk, mk, nk1) = (&n_big[k], &m_big[k], &n_big[k + 1]);
            if *mk < BigInt::from(2u32) || *mk >= nk1 - nk {
                return Err(Error::StructuralViolation {
                    position: k + 1,
                    reason: format!(
                        "2 <= m_k < n_(k+1) - n_k fails: m = {mk}, n = {nk}, next n = {nk1}"
                    ),
                });
            }
            if k > 0 && m_big[k] <= m_big[k - 1] {
                return Err(Error::StructuralViolation {
                    position: k + 1,
                    reason: "m_k is not strictly increasing".into(),
                });
            }
        }

        let to_u64 = |x: &BigInt| x.to_u64().expect("bounded by the digit budget");
        let n: Vec<u64> = n_big[..k_max].iter().map(to_u64).collect();
        let m: Vec<u64> = m_big[..k_max].iter().map(to_u64).collect();
        let n_next = n_big
            .get(k_max)
            .and_then(|x| x.to_u64())
            .unwrap_or(u64::MAX);

        let p: Vec<u64> = (0..k_max - 1).map(|k| (n[k + 1] - n[k]) / m[k]).collect();
        let mut n_prime = Vec::with_capacity(k_max);
        let mut shift = 1u64;
        for k in 0..k_max {
            n_prime.push(n[k] + shift);
            if k < k_max - 1 {
                shift += p[k] + 1;
            }
        }
        let u = (0..k_max)
            .map(|k| {
                let prev_end = if k == 0 { 0 } else { n[k - 1] + m[k - 1] };
                BigRational::new(BigInt::from(m[k]), BigInt::from(n[k] - prev_end))
            })
            .collect();

        Ok(Schedule {
            alpha,
            beta,
            max_digit,
            k_max,
            n,
            m,
            p,
            n_prime,
            u,
            n_next,
        })
    }

    pub fn alpha(&self) -> &ExactRational {
        &self.alpha
    }

    pub fn beta(&self) -> &ExactRational {
        &self.beta
    }

    /// The digit cap `M`.
    pub fn max_digit(&self) -> u64 {
        self.max_digit
    }

    /// The separator digit `2M`.
    pub fn separator(&self) -> u64 {
        2 * self.max_digit
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn n(&self) -> &[u64] {
        &self.n
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn p(&self) -> &[u64] {
        &self.p
    }

    pub fn n_prime(&self) -> &[u64] {
        &self.n_prime
    }

    pub fn u(&self) -> &[ExactRational] {
        &self.u
    }

    /// `n_{k+1}` for 1-based `k <= k_max`, including the term past the end.
    pub fn n_after(&self, k: usize) -> u64 {
        if k < self.k_max {
            self.n[k]
        } else {
            self.n_next
        }
    }

    /// Deepest position of a `G(M)` string: `n'_{k_max} + m_{k_max}`.
    pub fn point_horizon(&self) -> usize {
        (self.n_prime[self.k_max - 1] + self.m[self.k_max - 1]) as usize
    }

    /// Deepest admissible word: `n_{k_max} + m_{k_max}`.
    pub fn word_horizon(&self) -> usize {
        (self.n[self.k_max - 1] + self.m[self.k_max - 1]) as usize
    }

    /// Whether 1-based position `j` of an admissible word is forced to 2.
    pub fn is_forced(&self, j: usize) -> bool {
        let j = j as u64;
        // last block with n_k < j
        let idx = self.n.partition_point(|&nk| nk < j);
        idx > 0 && j <= self.n[idx - 1] + self.m[idx - 1]
    }

    /// Block `k` (1-based) whose segment `(n_{k-1}+m_{k-1}, n_k+m_k]` holds `j`.
    pub fn block_of(&self, j: usize) -> Option<usize> {
        let j = j as u64;
        let idx = (0..self.k_max).position(|k| j <= self.n[k] + self.m[k])?;
        (j >= 1).then_some(idx + 1)
    }

    /// Role of 1-based position `j` in a `G(M)` string.
    pub fn role(&self, j: usize) -> Result<Role> {
        if j == 0 || j > self.point_horizon() {
            return Err(Error::HorizonExceeded {
                depth: j,
                horizon: self.point_horizon(),
            });
        }
        let j = j as u64;
        let idx = self.n_prime.partition_point(|&np| np <= j);
        if idx == 0 {
            return Ok(Role::Free);
        }
        let k = idx - 1;
        let offset = j - self.n_prime[k];
        let mk = self.m[k];
        if offset == 0 {
            return Ok(Role::Separator);
        }
        if offset <= mk {
            return Ok(Role::Forced);
        }
        if k < self.k_max - 1 && (offset - 1).is_multiple_of(mk) && (offset - 1) / mk <= self.p[k] {
            return Ok(Role::Separator);
        }
        Ok(Role::Free)
    }

    /// Serializable view with rationals as `p/q` strings.
    pub fn record(&self) -> ScheduleRecord {
        ScheduleRecord {
            alpha: format_rational(&self.alpha),
            beta: format_rational(&self.beta),
            max_digit: self.max_digit,
            k_max: self.k_max,
            n: self.n.clone(),
            m: self.m.clone(),
            p: self.p.clone(),
            n_prime: self.n_prime.clone(),
            u: self.u.iter().map(format_rational).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleRecord {
    pub alpha: String,
    pub beta: String,
    #[serde(rename = "M")]
    pub max_digit: u64,
    pub k_max: usize,
    pub n: Vec<u64>,
    pub m: Vec<u64>,
    pub p: Vec<u64>,
    pub n_prime: Vec<u64>,
    pub u: Vec<String>,
}
