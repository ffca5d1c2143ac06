//! Goodness of fit of the digit sampler against `P(d = t) = 1/(t(t-1))`.

use luroth::experiments::{sample_digits, ExperimentConfig};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn sampled_digits_follow_the_digit_law() {
    let config = ExperimentConfig::new(99, 4, 250_000).unwrap();
    // bins 2..=9 plus a tail bin for d >= 10
    let mut counts = [0u64; 9];
    let mut total = 0u64;
    for trial in 0..config.trials {
        for d in sample_digits(&config, trial) {
            counts[(d.min(10) - 2) as usize] += 1;
            total += 1;
        }
    }
    let n = total as f64;
    let chi2: f64 = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let t = (i + 2) as f64;
            let p = if i == 8 {
                1.0 / 9.0
            } else {
                1.0 / (t * (t - 1.0))
            };
            let e = n * p;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    let dist = ChiSquared::new(8.0).unwrap();
    let p_value = 1.0 - dist.cdf(chi2);
    assert!(p_value > 1e-3, "chi2 = {chi2}, p = {p_value}");
}
