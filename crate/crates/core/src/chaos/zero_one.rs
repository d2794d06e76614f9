//! The 0-1 test for chaos, correlation method (Gottwald & Melbourne 2009).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_series, ChaosError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroOneParams {
    /// Number of random frequencies `c`.
    pub n_c: usize,
    /// `n_cut = len / cut_divisor`.
    pub cut_divisor: usize,
    pub seed: u64,
    pub min_len: usize,
}

impl Default for ZeroOneParams {
    fn default() -> Self {
        Self { n_c: 100, cut_divisor: 10, seed: 0x01_7e57, min_len: 1000 }
    }
}

/// `K_c` for one frequency.
pub fn k_for_frequency(phi: &[f64], c: f64, n_cut: usize) -> f64 {
    let n = phi.len();
    let mut p = vec![0.0; n + 1];
    let mut q = vec![0.0; n + 1];
    for j in 0..n {
        let a = (j + 1) as f64 * c;
        p[j + 1] = p[j] + phi[j] * a.cos();
        q[j + 1] = q[j] + phi[j] * a.sin();
    }
    let mean = phi.iter().sum::<f64>() / n as f64;
    let horizon = n - n_cut;
    let mut d = Vec::with_capacity(n_cut);
    for k in 1..=n_cut {
        let mut m = 0.0;
        for j in 1..=horizon {
            let dp = p[j + k] - p[j];
            let dq = q[j + k] - q[j];
            m += dp * dp + dq * dq;
        }
        m /= horizon as f64;
        let osc = mean * mean * (1.0 - (k as f64 * c).cos()) / (1.0 - c.cos());
        d.push(m - osc);
    }
    let xi: Vec<f64> = (1..=n_cut).map(|k| k as f64).collect();
    correlation(&xi, &d)
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    if sbb == 0.0 {
        return 0.0;
    }
    sab / (saa * sbb).sqrt()
}

/// Median of `K_c` over random `c` in `(π/5, 4π/5)`. Near 1 for chaotic
/// series, near 0 for regular ones.
pub fn zero_one_test(phi: &[f64], params: &ZeroOneParams) -> Result<f64, ChaosError> {
    check_series(phi, params.min_len)?;
    let n_cut = (phi.len() / params.cut_divisor.max(2)).max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let lo = std::f64::consts::PI / 5.0;
    let hi = 4.0 * std::f64::consts::PI / 5.0;
    let mut ks: Vec<f64> =
        (0..params.n_c.max(1)).map(|_| k_for_frequency(phi, rng.random_range(lo..hi), n_cut)).collect();
    ks.sort_by(f64::total_cmp);
    let mid = ks.len() / 2;
    Ok(if ks.len() % 2 == 1 { ks[mid] } else { 0.5 * (ks[mid - 1] + ks[mid]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn logistic(n: usize) -> Vec<f64> {
        let mut x = 0.3141;
        (0..n)
            .map(|_| {
                x = 4.0 * x * (1.0 - x);
                x
            })
            .collect()
    }

    fn period7(n: usize) -> Vec<f64> {
        let cycle = [0.1, 0.7, 0.3, 0.9, 0.2, 0.5, 0.8];
        (0..n).map(|i| cycle[i % 7]).collect()
    }

    #[test]
    fn calibration() {
        let k = zero_one_test(&logistic(5000), &ZeroOneParams::default()).unwrap();
        assert!(k >= 0.9, "logistic {k}");
        let k = zero_one_test(&period7(5000), &ZeroOneParams::default()).unwrap();
        assert!(k <= 0.1, "period 7 {k}");
    }

    #[test]
    fn affine_invariance() {
        let xs = logistic(2000);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 2.0).collect();
        let p = ZeroOneParams::default();
        let (a, b) = (zero_one_test(&xs, &p).unwrap(), zero_one_test(&ys, &p).unwrap());
        assert!((a - b).abs() <= 0.05, "{a} {b}");
    }

    #[test]
    fn verdict_survives_decimation() {
        let xs = logistic(20000);
        let ps = period7(20000);
        let p = ZeroOneParams { n_c: 30, ..ZeroOneParams::default() };
        for step in 1..=4 {
            let dx: Vec<f64> = xs.iter().step_by(step).take(4000).copied().collect();
            let dp: Vec<f64> = ps.iter().step_by(step).take(4000).copied().collect();
            assert!(zero_one_test(&dx, &p).unwrap() > 0.5, "chaotic at {step}");
            assert!(zero_one_test(&dp, &p).unwrap() < 0.5, "regular at {step}");
        }
    }

    #[test]
    fn constant_is_degenerate() {
        assert_eq!(zero_one_test(&[1.0; 2000], &ZeroOneParams::default()), Err(ChaosError::Degenerate));
        assert!(matches!(
            zero_one_test(&[1.0; 10], &ZeroOneParams::default()),
            Err(ChaosError::InsufficientData { .. })
        ));
    }
}
