//! Trajectory diagnostics of the solver: the similarity trace, the largest
//! Lyapunov exponent and the 0-1 test for chaos.

pub mod lyapunov;
pub mod trace;
pub mod zero_one;

use thiserror::Error;

pub use lyapunov::{lyapunov, LyapunovEstimate, LyapunovParams};
pub use trace::{difference_signal, TraceConfig, TraceRecorder, TraceSeries};
pub use zero_one::{zero_one_test, ZeroOneParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChaosError {
    #[error("series has {len} points, at least {min} needed")]
    InsufficientData { len: usize, min: usize },
    #[error("series has zero variance")]
    Degenerate,
}

pub(crate) fn check_series(x: &[f64], min_len: usize) -> Result<(), ChaosError> {
    if x.len() < min_len.max(2) {
        return Err(ChaosError::InsufficientData { len: x.len(), min: min_len.max(2) });
    }
    let first = x[0];
    if x.iter().all(|&v| v == first) {
        return Err(ChaosError::Degenerate);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChaosStatus {
    Ok,
    InsufficientData,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosStats {
    pub lambda: Option<f64>,
    pub k01: Option<f64>,
    pub datapoints: usize,
    pub status: ChaosStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChaosParams {
    pub lyapunov: LyapunovParams,
    pub zero_one: ZeroOneParams,
    /// Longer series are downsampled with a uniform stride to at most this
    /// many points before analysis; both estimators are quadratic in length.
    /// 0 disables the cap.
    pub max_points: usize,
}

impl Default for ChaosParams {
    fn default() -> Self {
        Self { lyapunov: LyapunovParams::default(), zero_one: ZeroOneParams::default(), max_points: 5000 }
    }
}

/// Every `stride`-th point, with the smallest stride that keeps at most
/// `max_points`.
pub fn downsample(x: &[f64], max_points: usize) -> Vec<f64> {
    if max_points == 0 || x.len() <= max_points {
        return x.to_vec();
    }
    let stride = x.len().div_ceil(max_points);
    x.iter().step_by(stride).copied().collect()
}

/// Runs both estimators. Each one is reported only when the series is long
/// enough for it. `datapoints` is the length actually analysed.
pub fn analyze(x: &[f64], params: &ChaosParams) -> ChaosStats {
    let x = &downsample(x, params.max_points)[..];
    let lam = lyapunov(x, &params.lyapunov);
    let k = zero_one_test(x, &params.zero_one);
    let status = match (&lam, &k) {
        (Err(ChaosError::Degenerate), _) | (_, Err(ChaosError::Degenerate)) => ChaosStatus::Degenerate,
        (Ok(_), Ok(_)) => ChaosStatus::Ok,
        _ => ChaosStatus::InsufficientData,
    };
    ChaosStats { lambda: lam.ok().map(|e| e.lambda), k01: k.ok(), datapoints: x.len(), status }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_series_is_flagged() {
        let xs: Vec<f64> = (0..300).map(|i| (i as f64 * 0.37).sin()).collect();
        let s = analyze(&xs, &ChaosParams::default());
        assert_eq!(s.status, ChaosStatus::InsufficientData);
        assert_eq!(s.datapoints, 300);
        assert!(s.k01.is_none());
    }

    #[test]
    fn long_series_are_capped() {
        let xs: Vec<f64> = (0..12_345).map(|i| (i as f64 * 0.37).sin()).collect();
        assert_eq!(downsample(&xs, 5000).len(), 4115);
        assert_eq!(downsample(&xs, 0).len(), 12_345);
        assert_eq!(downsample(&xs[..100], 5000).len(), 100);
        let s = analyze(&xs, &ChaosParams::default());
        assert!(s.datapoints <= 5000);
    }

    #[test]
    fn constant_series_is_flagged() {
        let s = analyze(&[0.25; 3000], &ChaosParams::default());
        assert_eq!(s.status, ChaosStatus::Degenerate);
    }
}
