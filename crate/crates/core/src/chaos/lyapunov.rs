//! Largest Lyapunov exponent of a scalar series by nearest-neighbor
//! divergence in a delay embedding (Rosenstein et al. 1993).

use super::{check_series, ChaosError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LyapunovParams {
    /// Embedding dimension.
    pub dim: usize,
    /// Embedding delay; `None` uses the first minimum of the autocorrelation
    /// (or its first drop below `1/e`, whichever comes first).
    pub delay: Option<usize>,
    /// Minimum temporal separation of neighbors; `None` uses `dim * delay`.
    pub theiler: Option<usize>,
    /// Number of divergence steps followed.
    pub horizon: usize,
    pub min_len: usize,
}

impl Default for LyapunovParams {
    fn default() -> Self {
        Self { dim: 3, delay: None, theiler: None, horizon: 20, min_len: 500 }
    }
}

/// Mean-log divergence curve together with the slope fitted to its initial
/// linear part.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovEstimate {
    pub lambda: f64,
    pub delay: usize,
    /// `<ln d(k)>` for `k = 0..horizon`.
    pub divergence: Vec<f64>,
    /// Fitted range `0..=fit_end`.
    pub fit_end: usize,
}

/// Autocorrelation at lags `0..=max_lag`.
pub fn autocorrelation(x: &[f64], max_lag: usize) -> Vec<f64> {
    let n = x.len();
    let mean = x.iter().sum::<f64>() / n as f64;
    let var: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    (0..=max_lag.min(n - 1))
        .map(|lag| {
            let c: f64 = (0..n - lag).map(|i| (x[i] - mean) * (x[i + lag] - mean)).sum();
            c / var
        })
        .collect()
}

/// First local minimum of the autocorrelation, or the first lag where it
/// falls below `1/e`, whichever is earlier.
pub fn default_delay(x: &[f64]) -> usize {
    let acf = autocorrelation(x, (x.len() / 10).max(2));
    let threshold = (-1.0f64).exp();
    for lag in 1..acf.len() {
        if acf[lag] < threshold {
            return lag;
        }
        if lag + 1 < acf.len() && acf[lag] <= acf[lag - 1] && acf[lag] <= acf[lag + 1] {
            return lag;
        }
    }
    1
}

pub fn lyapunov(x: &[f64], params: &LyapunovParams) -> Result<LyapunovEstimate, ChaosError> {
    check_series(x, params.min_len)?;
    let dim = params.dim.max(1);
    let delay = params.delay.unwrap_or_else(|| default_delay(x)).max(1);
    let theiler = params.theiler.unwrap_or(dim * delay);
    let span = (dim - 1) * delay;
    let horizon = params.horizon.max(2);
    if x.len() <= span + horizon + theiler + 2 {
        return Err(ChaosError::InsufficientData { len: x.len(), min: span + horizon + theiler + 3 });
    }
    let m = x.len() - span;
    let usable = m - horizon;
    let point = |i: usize| (0..dim).map(move |d| x[i + d * delay]);
    let dist = |i: usize, j: usize| -> f64 { point(i).zip(point(j)).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt() };

    let mut sums = vec![0.0; horizon];
    let mut counts = vec![0usize; horizon];
    for i in 0..usable {
        let mut best = f64::INFINITY;
        let mut nn = usize::MAX;
        for j in 0..usable {
            if i.abs_diff(j) <= theiler {
                continue;
            }
            let d = dist(i, j);
            if d > 0.0 && d < best {
                best = d;
                nn = j;
            }
        }
        if nn == usize::MAX {
            continue;
        }
        for k in 0..horizon {
            let d = dist(i + k, nn + k);
            if d > 0.0 {
                sums[k] += d.ln();
                counts[k] += 1;
            }
        }
    }
    if counts[0] == 0 {
        return Err(ChaosError::Degenerate);
    }
    let divergence: Vec<f64> =
        sums.iter().zip(&counts).map(|(s, &c)| if c > 0 { s / c as f64 } else { f64::NAN }).collect();

    // linear part: up to 80% of the rise towards the plateau
    let y0 = divergence[0];
    let top = divergence.iter().copied().filter(|v| v.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    let rise = top - y0;
    let mut fit_end = horizon - 1;
    if rise > 1.0 {
        let level = y0 + 0.8 * rise;
        if let Some(k) = divergence.iter().position(|&v| v >= level) {
            fit_end = k.max(2);
        }
    }
    let lambda = slope(&divergence[..=fit_end]);
    Ok(LyapunovEstimate { lambda, delay, divergence, fit_end })
}

/// Least-squares slope against the index.
fn slope(y: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> =
        y.iter().enumerate().filter(|(_, v)| v.is_finite()).map(|(i, &v)| (i as f64, v)).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
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

    #[test]
    fn logistic_map_matches_the_derivative_product() {
        let xs = logistic(5000);
        // independent estimate: average of ln|f'(x)| along the orbit
        let direct = xs.iter().map(|&x| (4.0 * (1.0 - 2.0 * x)).abs().ln()).sum::<f64>() / xs.len() as f64;
        assert!((direct - 2f64.ln()).abs() < 0.05, "{direct}");
        let est = lyapunov(&xs, &LyapunovParams::default()).unwrap();
        assert!((est.lambda - direct).abs() < 0.1, "{} vs {direct}", est.lambda);
    }

    #[test]
    fn sine_is_not_chaotic() {
        let xs: Vec<f64> = (0..5000).map(|t| (0.1 * t as f64).sin()).collect();
        let est = lyapunov(&xs, &LyapunovParams::default()).unwrap();
        assert!(est.lambda <= 0.05, "{}", est.lambda);
    }

    #[test]
    fn rejects_short_and_constant_series() {
        assert!(matches!(lyapunov(&[0.5; 100], &LyapunovParams::default()), Err(ChaosError::InsufficientData { .. })));
        assert_eq!(lyapunov(&[0.5; 1000], &LyapunovParams::default()), Err(ChaosError::Degenerate));
    }
}
