//! Small statistical helpers for Monte Carlo experiment reports.

use crate::error::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

/// One estimated probability or mean with its uncertainty, traceable to the
/// seed that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub estimate: f64,
    pub ci_radius: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Wilson 95% score interval for a binomial proportion, as (center, radius).
/// Unlike the normal approximation it stays inside [0, 1] and behaves at
/// zero or full counts.
pub fn wilson_interval(successes: u64, trials: u64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::Domain("interval needs at least one trial".into()));
    }
    if successes > trials {
        return Err(Error::Domain(format!(
            "{successes} successes out of {trials} trials"
        )));
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let radius = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Ok((center, radius))
}

/// Sample mean and its standard error.
pub fn mean_and_se(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(Error::Domain("mean of an empty sample".into()));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

/// Standard error of a binomial proportion estimate.
pub fn proportion_se(p_hat: f64, trials: u64) -> f64 {
    (p_hat * (1.0 - p_hat) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_is_sane() {
        let (c, r) = wilson_interval(50, 100).unwrap();
        assert!((c - 0.5).abs() < 1e-12);
        // Close to the normal-approximation radius at p = 1/2.
        assert!((r - 0.0967).abs() < 0.002);
        // Degenerate counts stay in range.
        let (c0, r0) = wilson_interval(0, 20).unwrap();
        assert!(c0 - r0 <= 0.0 + 1e-12 && c0 > 0.0);
        let (c1, r1) = wilson_interval(20, 20).unwrap();
        assert!(c1 + r1 >= 1.0 - 1e-12 && c1 < 1.0);
        assert!(wilson_interval(5, 0).is_err());
        assert!(wilson_interval(5, 4).is_err());
    }

    #[test]
    fn mean_and_se_basics() {
        let (m, se) = mean_and_se(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((m - 2.5).abs() < 1e-15);
        // Sample variance 5/3, se = sqrt(5/12).
        assert!((se - (5.0f64 / 12.0).sqrt()).abs() < 1e-12);
        assert!(mean_and_se(&[]).is_err());
        assert_eq!(mean_and_se(&[7.0]).unwrap(), (7.0, 0.0));
    }
}
