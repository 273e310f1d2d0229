//! Time-series primitives: smoothing, differencing, autocorrelation,
//! classical additive decomposition and a segment-comparison stationarity
//! heuristic.

use serde::{Deserialize, Serialize};

use crate::error::{EdaError, Result};
use crate::stats;

/// Ordered, fully observed series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub values: Vec<f64>,
    pub period_hint: Option<usize>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(EdaError::InsufficientData { needed: 1, got: 0 });
        }
        if let Some(row) = values.iter().position(|v| !v.is_finite()) {
            return Err(EdaError::OutOfRange {
                row,
                message: "time series values must be finite".into(),
            });
        }
        Ok(TimeSeries {
            values,
            period_hint: None,
        })
    }

    pub fn with_period(mut self, period: usize) -> Result<Self> {
        if period < 2 {
            return Err(EdaError::invalid("period must be at least 2"));
        }
        self.period_hint = Some(period);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn derived(&self, values: Vec<f64>) -> TimeSeries {
        TimeSeries {
            values,
            period_hint: self.period_hint,
        }
    }
}

/// Trailing-window means, `n - window + 1` values.
pub fn moving_average(s: &TimeSeries, window: usize) -> Result<TimeSeries> {
    if window < 1 || window > s.len() {
        return Err(EdaError::invalid(format!(
            "window {window} outside [1, {}]",
            s.len()
        )));
    }
    let w = window as f64;
    Ok(s.derived(
        s.values
            .windows(window)
            .map(|win| win.iter().sum::<f64>() / w)
            .collect(),
    ))
}

/// `s0 = x0`, `st = alpha xt + (1 - alpha) s(t-1)`, evaluated as
/// `s(t-1) + alpha (xt - s(t-1))` so constant input stays exactly constant.
pub fn exp_smoothing(s: &TimeSeries, alpha: f64) -> Result<TimeSeries> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(EdaError::invalid(format!("alpha {alpha} outside (0, 1]")));
    }
    let mut out = Vec::with_capacity(s.len());
    let mut level = s.values[0];
    out.push(level);
    for &x in &s.values[1..] {
        level += alpha * (x - level);
        out.push(level);
    }
    Ok(s.derived(out))
}

/// `out[t] = x[t + lag] - x[t]`.
pub fn difference(s: &TimeSeries, lag: usize) -> Result<TimeSeries> {
    if lag < 1 || lag >= s.len() {
        return Err(EdaError::invalid(format!(
            "lag {lag} outside [1, {})",
            s.len()
        )));
    }
    Ok(s.derived(
        s.values[lag..]
            .iter()
            .zip(&s.values)
            .map(|(a, b)| a - b)
            .collect(),
    ))
}

pub fn cumulative_sum(s: &TimeSeries) -> TimeSeries {
    let mut acc = 0.0;
    s.derived(
        s.values
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect(),
    )
}

/// Biased autocorrelation for lags `0..=max_lag`.
pub fn acf(s: &TimeSeries, max_lag: usize) -> Result<Vec<f64>> {
    let n = s.len();
    if max_lag >= n {
        return Err(EdaError::invalid(format!("max_lag {max_lag} must be < {n}")));
    }
    let m = stats::mean(&s.values);
    let dev: Vec<f64> = s.values.iter().map(|x| x - m).collect();
    let c0: f64 = dev.iter().map(|d| d * d).sum();
    if c0 == 0.0 {
        return Err(EdaError::ZeroVariance("constant series".into()));
    }
    let mut out = Vec::with_capacity(max_lag + 1);
    out.push(1.0);
    for h in 1..=max_lag {
        let ch: f64 = dev[..n - h].iter().zip(&dev[h..]).map(|(a, b)| a * b).sum();
        out.push((ch / c0).clamp(-1.0, 1.0));
    }
    Ok(out)
}

/// Partial autocorrelation for lags `0..=max_lag` by the Durbin–Levinson
/// recursion on the biased autocorrelations. Lag 0 is 1.
pub fn pacf(s: &TimeSeries, max_lag: usize) -> Result<Vec<f64>> {
    let r = acf(s, max_lag)?;
    let mut out = vec![1.0];
    let mut phi: Vec<f64> = Vec::new();
    for k in 1..=max_lag {
        let num = r[k] - (1..k).map(|j| phi[j - 1] * r[k - j]).sum::<f64>();
        let den = 1.0 - (1..k).map(|j| phi[j - 1] * r[j]).sum::<f64>();
        let kk = if den == 0.0 { 0.0 } else { num / den };
        let prev = phi.clone();
        phi = (1..k).map(|j| prev[j - 1] - kk * prev[k - j - 1]).collect();
        phi.push(kk);
        out.push(kk);
    }
    Ok(out)
}

/// Classical additive decomposition. `trend` and `residual` are `None`
/// where the centered moving average is undefined (the series edges).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub period: usize,
    pub trend: Vec<Option<f64>>,
    pub seasonal: Vec<f64>,
    pub residual: Vec<Option<f64>>,
}

pub fn decompose_additive(s: &TimeSeries, period: usize) -> Result<Decomposition> {
    if period < 2 {
        return Err(EdaError::invalid("period must be at least 2"));
    }
    let n = s.len();
    if n < 2 * period {
        return Err(EdaError::InsufficientData {
            needed: 2 * period,
            got: n,
        });
    }
    let x = &s.values;
    let half = period / 2;
    let mut trend = vec![None; n];
    for t in half..(n - half) {
        let value = if period % 2 == 1 {
            x[t - half..=t + half].iter().sum::<f64>() / period as f64
        } else {
            // 2×period moving average: half weight on both ends
            let inner: f64 = x[t - half + 1..t + half].iter().sum();
            (inner + 0.5 * (x[t - half] + x[t + half])) / period as f64
        };
        trend[t] = Some(value);
    }

    let mut phase_sum = vec![0.0; period];
    let mut phase_n = vec![0usize; period];
    for t in 0..n {
        if let Some(tr) = trend[t] {
            phase_sum[t % period] += x[t] - tr;
            phase_n[t % period] += 1;
        }
    }
    let mut pattern: Vec<f64> = phase_sum
        .iter()
        .zip(&phase_n)
        .map(|(s, &c)| s / c as f64)
        .collect();
    let centre = pattern.iter().sum::<f64>() / period as f64;
    pattern.iter_mut().for_each(|p| *p -= centre);

    let seasonal: Vec<f64> = (0..n).map(|t| pattern[t % period]).collect();
    let residual = (0..n)
        .map(|t| trend[t].map(|tr| x[t] - tr - seasonal[t]))
        .collect();
    Ok(Decomposition {
        period,
        trend,
        seasonal,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityReport {
    /// Heuristic verdict, not a hypothesis test.
    pub stationary: bool,
    pub segment_means: Vec<f64>,
    pub segment_variances: Vec<f64>,
    /// Largest pairwise gap between segment means, in global std units.
    pub mean_deviation: f64,
    /// Largest pairwise gap between segment variances relative to the
    /// larger of the two.
    pub variance_deviation: f64,
}

/// Splits the series into `segments` equal parts (the remainder joins the
/// last) and compares their means and sample variances.
pub fn stationarity_check(
    s: &TimeSeries,
    segments: usize,
    rel_tol: f64,
) -> Result<StationarityReport> {
    if segments < 2 {
        return Err(EdaError::invalid("need at least two segments"));
    }
    if !(rel_tol >= 0.0) {
        return Err(EdaError::invalid("rel_tol must be non-negative"));
    }
    let n = s.len();
    if n < 2 * segments {
        return Err(EdaError::InsufficientData {
            needed: 2 * segments,
            got: n,
        });
    }
    let size = n / segments;
    let parts: Vec<&[f64]> = (0..segments)
        .map(|i| {
            let end = if i + 1 == segments { n } else { (i + 1) * size };
            &s.values[i * size..end]
        })
        .collect();
    let segment_means: Vec<f64> = parts.iter().map(|p| stats::mean(p)).collect();
    let segment_variances = parts
        .iter()
        .map(|p| stats::variance(p))
        .collect::<Result<Vec<_>>>()?;

    let global_std = stats::std_dev(&s.values)?;
    let spread = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };
    let (mlo, mhi) = spread(&segment_means);
    let mean_deviation = if mhi == mlo {
        0.0
    } else {
        (mhi - mlo) / global_std
    };
    let (vlo, vhi) = spread(&segment_variances);
    let variance_deviation = if vhi == vlo { 0.0 } else { (vhi - vlo) / vhi };

    Ok(StationarityReport {
        stationary: mean_deviation <= rel_tol && variance_deviation <= rel_tol,
        segment_means,
        segment_variances,
        mean_deviation,
        variance_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn moving_average_examples() {
        let s = ts(&[1.0, 3.0, 5.0]);
        assert_eq!(moving_average(&s, 1).unwrap(), s);
        assert_eq!(moving_average(&s, 2).unwrap().values, vec![2.0, 4.0]);
        assert_eq!(moving_average(&ts(&[7.0; 5]), 3).unwrap().values, vec![7.0; 3]);
        assert!(moving_average(&s, 0).is_err());
        assert!(moving_average(&s, 4).is_err());
    }

    #[test]
    fn smoothing_examples() {
        let s = ts(&[2.0, 4.0]);
        assert_eq!(exp_smoothing(&s, 1.0).unwrap(), s);
        assert_eq!(exp_smoothing(&s, 0.5).unwrap().values, vec![2.0, 3.0]);
        assert_eq!(exp_smoothing(&ts(&[3.0; 4]), 0.3).unwrap().values, vec![3.0; 4]);
        assert!(exp_smoothing(&s, 0.0).is_err());
        assert!(exp_smoothing(&s, 1.5).is_err());
    }

    #[test]
    fn difference_examples() {
        assert_eq!(difference(&ts(&[1.0, 3.0, 6.0]), 1).unwrap().values, vec![2.0, 3.0]);
        let lin: Vec<f64> = (0..10).map(|t| 2.0 + 0.5 * t as f64).collect();
        assert!(difference(&ts(&lin), 1).unwrap().values.iter().all(|&d| d == 0.5));
        assert_eq!(difference(&ts(&[4.0; 3]), 2).unwrap().values, vec![0.0]);
        assert!(difference(&ts(&[1.0, 2.0]), 2).is_err());
    }

    #[test]
    fn acf_examples() {
        let alt = ts(&[1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        let r = acf(&alt, 1).unwrap();
        assert_eq!(r[0], 1.0);
        assert!((r[1] + 5.0 / 6.0).abs() < 1e-12);
        let p = pacf(&alt, 3).unwrap();
        assert_eq!(p[1], r[1]);
        assert!(matches!(acf(&ts(&[2.0; 5]), 1), Err(EdaError::ZeroVariance(_))));
        assert!(acf(&alt, 6).is_err());
        assert_eq!(acf(&alt, 0).unwrap(), vec![1.0]);
    }

    #[test]
    fn decompose_alternating() {
        let v: Vec<f64> = (0..12).map(|t| if t % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let d = decompose_additive(&ts(&v), 2).unwrap();
        assert_eq!(d.trend[0], None);
        assert_eq!(d.trend[11], None);
        for t in 1..11 {
            assert!(d.trend[t].unwrap().abs() < 1e-12);
            assert!(d.residual[t].unwrap().abs() < 1e-12);
        }
        assert!((d.seasonal[0] - 1.0).abs() < 1e-12 && (d.seasonal[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_linear_trend() {
        let v: Vec<f64> = (0..30).map(|t| 3.0 - 0.7 * t as f64).collect();
        for period in [3, 4, 7] {
            let d = decompose_additive(&ts(&v), period).unwrap();
            assert!(d.seasonal.iter().all(|s| s.abs() < 1e-9), "period {period}");
        }
        assert!(decompose_additive(&ts(&v[..5]), 3).is_err());
        assert!(decompose_additive(&ts(&v), 1).is_err());
    }

    #[test]
    fn stationarity_examples() {
        let trend: Vec<f64> = (0..200).map(|t| t as f64).collect();
        let r = stationarity_check(&ts(&trend), 4, 0.25).unwrap();
        assert!(!r.stationary);
        let flat = stationarity_check(&ts(&[2.0; 16]), 4, 0.25).unwrap();
        assert!(flat.stationary);
        assert!(flat.segment_variances.iter().all(|&v| v == 0.0));
        assert!(stationarity_check(&ts(&[1.0; 7]), 4, 0.25).is_err());
        let odd = stationarity_check(&ts(&(0..10).map(f64::from).collect::<Vec<_>>()), 3, 0.25)
            .unwrap();
        assert_eq!(odd.segment_means.len(), 3);
        assert_eq!(odd.segment_means[2], 7.5);
    }
}
