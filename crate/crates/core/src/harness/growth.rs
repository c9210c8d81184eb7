//! Log-log growth fitting for step-count series.

use serde::Serialize;
use thiserror::Error;

pub const LINEAR_MAX_SLOPE: f64 = 1.05;
pub const LINEAR_MAX_SPREAD: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthVerdict {
    Linear,
    NotLinear,
}

impl GrowthVerdict {
    pub fn name(self) -> &'static str {
        match self {
            GrowthVerdict::Linear => "linear",
            GrowthVerdict::NotLinear => "not_linear",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    /// `(n, steps)`, strictly increasing in `n`.
    pub series: Vec<(u64, u64)>,
    pub fitted_exponent: f64,
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub verdict: GrowthVerdict,
}

impl GrowthReport {
    pub fn spread(&self) -> f64 {
        self.max_ratio / self.min_ratio
    }

    /// `c` with `steps ≥ n^2 / c` at every point, i.e. `max n²/steps`.
    pub fn quadratic_constant(&self) -> f64 {
        self.series.iter().map(|&(n, s)| (n as f64).powi(2) / s as f64).fold(0.0, f64::max)
    }

    pub fn summary(&self) -> String {
        format!(
            "points={} slope={:.4} max_ratio={:.4} min_ratio={:.4} spread={:.4} verdict={}",
            self.series.len(),
            self.fitted_exponent,
            self.max_ratio,
            self.min_ratio,
            self.spread(),
            self.verdict.name()
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("need at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("input size {0} appears twice")]
    DuplicateSize(u64),
    #[error("input size {0} is below 2")]
    SizeTooSmall(u64),
    #[error("zero steps at n = {0}")]
    ZeroSteps(u64),
}

/// Least-squares slope of `ln steps` against `ln n`; linear iff the slope is
/// at most [`LINEAR_MAX_SLOPE`] and `max_ratio / min_ratio` at most
/// [`LINEAR_MAX_SPREAD`], where the ratios are `steps / n`.
pub fn fit_growth(series: &[(u64, u64)]) -> Result<GrowthReport, GrowthError> {
    if series.len() < 4 {
        return Err(GrowthError::TooFewPoints(series.len()));
    }
    let mut series = series.to_vec();
    series.sort_unstable();
    for w in series.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(GrowthError::DuplicateSize(w[0].0));
        }
    }
    if let Some(&(n, _)) = series.iter().find(|p| p.0 < 2) {
        return Err(GrowthError::SizeTooSmall(n));
    }
    if let Some(&(n, _)) = series.iter().find(|p| p.1 == 0) {
        return Err(GrowthError::ZeroSteps(n));
    }
    let pts: Vec<(f64, f64)> = series.iter().map(|&(n, s)| ((n as f64).ln(), (s as f64).ln())).collect();
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let ratios = series.iter().map(|&(n, s)| s as f64 / n as f64);
    let max_ratio = ratios.clone().fold(f64::MIN, f64::max);
    let min_ratio = ratios.fold(f64::MAX, f64::min);
    let verdict = if slope <= LINEAR_MAX_SLOPE && max_ratio / min_ratio <= LINEAR_MAX_SPREAD {
        GrowthVerdict::Linear
    } else {
        GrowthVerdict::NotLinear
    };
    Ok(GrowthReport { series, fitted_exponent: slope, max_ratio, min_ratio, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes() -> impl Iterator<Item = u64> {
        (3..12).map(|j| 1u64 << j)
    }

    #[test]
    fn exact_linear() {
        let r = fit_growth(&sizes().map(|n| (n, 7 * n)).collect::<Vec<_>>()).unwrap();
        assert!((r.fitted_exponent - 1.0).abs() < 1e-9);
        assert!((r.max_ratio - 7.0).abs() < 1e-9);
        assert_eq!(r.verdict, GrowthVerdict::Linear);
    }

    #[test]
    fn exact_quadratic() {
        let r = fit_growth(&sizes().map(|n| (n, n * n)).collect::<Vec<_>>()).unwrap();
        assert!((r.fitted_exponent - 2.0).abs() < 1e-9);
        assert_eq!(r.verdict, GrowthVerdict::NotLinear);
        assert!((r.quadratic_constant() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn n_log_n_fails_spread_or_slope() {
        let series: Vec<_> = (8..20).map(|j| (1u64 << j, (1u64 << j) * j * j)).collect();
        assert_eq!(fit_growth(&series).unwrap().verdict, GrowthVerdict::NotLinear);
    }

    #[test]
    fn unsorted_input_is_sorted() {
        let r = fit_growth(&[(16, 32), (4, 8), (8, 16), (2, 4)]).unwrap();
        assert_eq!(r.series[0], (2, 4));
    }

    #[test]
    fn degenerate_series() {
        assert_eq!(fit_growth(&[(2, 1), (4, 2), (8, 3)]), Err(GrowthError::TooFewPoints(3)));
        assert_eq!(fit_growth(&[(2, 1), (4, 2), (4, 3), (8, 1)]), Err(GrowthError::DuplicateSize(4)));
        assert_eq!(fit_growth(&[(1, 1), (4, 2), (5, 3), (8, 1)]), Err(GrowthError::SizeTooSmall(1)));
        assert_eq!(fit_growth(&[(2, 1), (4, 0), (5, 3), (8, 1)]), Err(GrowthError::ZeroSteps(4)));
    }
}
