//! Statistical checks used by the harness: chi-square uniformity and
//! least-squares fits for scaling laws.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Chi-square uniformity test over pre-binned counts.
/// Returns the p-value; small p rejects uniformity.
pub fn chi_square_uniform_p(counts: &[u64]) -> f64 {
    let bins = counts.len();
    assert!(bins >= 2, "need at least two bins");
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 1.0;
    }
    let expected = total as f64 / bins as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let dist = ChiSquared::new((bins - 1) as f64).expect("valid dof");
    1.0 - dist.cdf(stat)
}

/// Bin raw positions from `[0, range)` into `min(64, range)` equal bins.
pub fn bin_positions(positions: &[usize], range: usize) -> Vec<u64> {
    let bins = range.min(64).max(2);
    let mut counts = vec![0u64; bins];
    for &p in positions {
        debug_assert!(p < range);
        counts[p * bins / range] += 1;
    }
    counts
}

/// Ordinary least squares for `y = a + b*x`; returns (a, b).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    assert!(n >= 2.0);
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let a = (sy - b * sx) / n;
    (a, b)
}

/// Fit `count_k ~ beta^k` on a survival curve by log-linear regression over
/// the tail `k >= 1`; returns the fitted decay rate `beta`.
pub fn fit_geometric_decay(survival: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = survival
        .iter()
        .filter(|&&(k, p)| k >= 1 && p > 0.0)
        .map(|&(k, p)| (k as f64, p.ln()))
        .collect();
    assert!(pts.len() >= 2, "survival tail too short to fit");
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (_, slope) = linear_fit(&xs, &ys);
    slope.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn uniform_counts_pass() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let positions: Vec<usize> = (0..20_000).map(|_| rng.gen_range(0..256)).collect();
        let p = chi_square_uniform_p(&bin_positions(&positions, 256));
        assert!(p > 0.01, "uniform sample rejected, p = {p}");
    }

    #[test]
    fn skewed_counts_fail() {
        let positions: Vec<usize> = (0..10_000).map(|i| (i % 10) as usize).collect();
        let p = chi_square_uniform_p(&bin_positions(&positions, 256));
        assert!(p < 1e-6, "skewed sample accepted, p = {p}");
    }

    #[test]
    fn empty_sample_is_vacuous() {
        assert_eq!(chi_square_uniform_p(&[0, 0, 0, 0]), 1.0);
    }

    #[test]
    fn linear_fit_recovers_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let (a, b) = linear_fit(&xs, &ys);
        assert!((a - 1.0).abs() < 1e-9);
        assert!((b - 2.0).abs() < 1e-9);
    }

    #[test]
    fn geometric_decay_recovered() {
        let survival: Vec<(usize, f64)> = (1..12).map(|k| (k, 0.5f64.powi(k as i32))).collect();
        let beta = fit_geometric_decay(&survival);
        assert!((beta - 0.5).abs() < 1e-6, "beta = {beta}");
    }
}
