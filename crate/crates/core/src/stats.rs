//! Univariate descriptive statistics.
//!
//! Conventions shared across the crate: sample variance (ddof = 1) and
//! type-7 quantiles (linear interpolation at `h = (n - 1) p`).

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::error::{EdaError, Result};
use crate::table::Column;

/// Excess kurtosis within this distance of zero counts as mesokurtic.
pub const MESOKURTIC_BAND: f64 = 0.05;

/// Anything that can yield the present (non-missing) values of a numeric
/// sample.
pub trait NumericSource {
    fn present_values(&self) -> Result<Cow<'_, [f64]>>;

    fn missing_count(&self) -> usize {
        0
    }
}

impl NumericSource for [f64] {
    fn present_values(&self) -> Result<Cow<'_, [f64]>> {
        if let Some(i) = self.iter().position(|v| !v.is_finite()) {
            return Err(EdaError::OutOfRange {
                row: i,
                message: "non-finite value".into(),
            });
        }
        Ok(Cow::Borrowed(self))
    }
}

impl NumericSource for Vec<f64> {
    fn present_values(&self) -> Result<Cow<'_, [f64]>> {
        self.as_slice().present_values()
    }
}

impl NumericSource for Column {
    fn present_values(&self) -> Result<Cow<'_, [f64]>> {
        if self.null_count() == 0 {
            Ok(Cow::Borrowed(self.numeric_values()?))
        } else {
            Ok(Cow::Owned(self.present_numeric()?))
        }
    }

    fn missing_count(&self) -> usize {
        self.null_count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KurtosisClass {
    Mesokurtic,
    Leptokurtic,
    Platykurtic,
}

impl KurtosisClass {
    pub fn from_excess(excess: f64) -> Self {
        if excess > MESOKURTIC_BAND {
            KurtosisClass::Leptokurtic
        } else if excess < -MESOKURTIC_BAND {
            KurtosisClass::Platykurtic
        } else {
            KurtosisClass::Mesokurtic
        }
    }
}

/// Descriptive profile of one numeric column.
///
/// `skew_moment` needs three values, `kurtosis_excess` four, and both need
/// a non-zero spread; otherwise they are `None` (JSON `null`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub count: usize,
    pub n_missing: usize,
    pub mean: f64,
    pub median: f64,
    pub mode: f64,
    pub min: f64,
    pub max: f64,
    pub range: f64,
    pub variance: f64,
    pub std: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
    pub skew_pearson: f64,
    pub skew_moment: Option<f64>,
    pub kurtosis_excess: Option<f64>,
    pub kurtosis_class: Option<KurtosisClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SkewnessMode {
    /// `3 (mean - median) / std`.
    #[default]
    PearsonMedian,
    /// Adjusted Fisher–Pearson moment coefficient.
    Moment,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BinSpec {
    /// Sturges' rule, `ceil(log2 n) + 1` bins.
    Auto,
    Fixed(usize),
    Width(f64),
}

/// Equal-width histogram. Bins are half-open `[lo, hi)` except the last,
/// which is closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub underflow: usize,
    pub overflow: usize,
}

impl Histogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Index of the fullest bin (lowest index on ties).
    pub fn modal_bin(&self) -> Option<usize> {
        let max = *self.counts.iter().max()?;
        self.counts.iter().position(|&c| c == max)
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        0.5 * (self.edges[i] + self.edges[i + 1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyRow {
    pub label: String,
    pub count: usize,
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub rows: Vec<FrequencyRow>,
}

impl FrequencyTable {
    /// Builds a table in the given row order, deriving proportions.
    pub fn from_counts(rows: Vec<(String, usize)>) -> Self {
        let total: usize = rows.iter().map(|r| r.1).sum();
        FrequencyTable {
            rows: rows
                .into_iter()
                .map(|(label, count)| FrequencyRow {
                    label,
                    count,
                    proportion: if total == 0 {
                        0.0
                    } else {
                        count as f64 / total as f64
                    },
                })
                .collect(),
        }
    }

    pub fn labels(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.label.as_str()).collect()
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&FrequencyRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}

fn require(n: usize, needed: usize) -> Result<()> {
    if n < needed {
        Err(EdaError::InsufficientData { needed, got: n })
    } else {
        Ok(())
    }
}

fn sorted_copy(values: &[f64]) -> Vec<f64> {
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

/// Type-7 quantile of already-sorted data, `q` in `[0, 1]`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    let frac = h - lo as f64;
    if lo == hi || frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

/// Arithmetic mean with a second-pass correction for rounding.
pub fn mean(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let m = values.iter().sum::<f64>() / n;
    m + values.iter().map(|v| v - m).sum::<f64>() / n
}

/// Sample variance (ddof = 1).
pub fn variance(values: &[f64]) -> Result<f64> {
    require(values.len(), 2)?;
    let m = mean(values);
    Ok(values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64)
}

pub fn std_dev(values: &[f64]) -> Result<f64> {
    variance(values).map(f64::sqrt)
}

/// Most frequent value; the smallest wins a tie.
fn mode_sorted(sorted: &[f64]) -> f64 {
    let mut best = sorted[0];
    let mut best_len = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i > best_len {
            best_len = j - i;
            best = sorted[i];
        }
        i = j;
    }
    best
}

struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

fn central_moments(values: &[f64]) -> Moments {
    let n = values.len() as f64;
    let m = mean(values);
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - m;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    Moments {
        n,
        mean: m,
        m2: m2 / n,
        m3: m3 / n,
        m4: m4 / n,
    }
}

impl Moments {
    fn skew_adjusted(&self) -> Option<f64> {
        if self.n < 3.0 || self.m2 == 0.0 {
            return None;
        }
        let g1 = self.m3 / self.m2.powf(1.5);
        Some(g1 * (self.n * (self.n - 1.0)).sqrt() / (self.n - 2.0))
    }

    fn kurtosis_adjusted(&self) -> Option<f64> {
        if self.n < 4.0 || self.m2 == 0.0 {
            return None;
        }
        let n = self.n;
        let g2 = self.m4 / (self.m2 * self.m2) - 3.0;
        Some(((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0)))
    }
}

/// Full descriptive profile. Needs at least two present values.
pub fn summarize<S: NumericSource + ?Sized>(source: &S) -> Result<SummaryStats> {
    let values = source.present_values()?;
    require(values.len(), 2)?;
    let sorted = sorted_copy(&values);
    let moments = central_moments(&values);
    let variance = moments.m2 * moments.n / (moments.n - 1.0);
    let std = variance.sqrt();
    let median = quantile_sorted(&sorted, 0.5);
    let q1 = quantile_sorted(&sorted, 0.25);
    let q3 = quantile_sorted(&sorted, 0.75);
    let min = sorted[0];
    let max = sorted[sorted.len() - 1];
    let kurtosis_excess = moments.kurtosis_adjusted();
    Ok(SummaryStats {
        count: values.len(),
        n_missing: source.missing_count(),
        mean: moments.mean,
        median,
        mode: mode_sorted(&sorted),
        min,
        max,
        range: max - min,
        variance,
        std,
        q1,
        q3,
        iqr: q3 - q1,
        skew_pearson: if std > 0.0 {
            3.0 * (moments.mean - median) / std
        } else {
            0.0
        },
        skew_moment: moments.skew_adjusted(),
        kurtosis_excess,
        kurtosis_class: kurtosis_excess.map(KurtosisClass::from_excess),
    })
}

/// Type-7 percentile, `p` in `[0, 100]`.
pub fn percentile<S: NumericSource + ?Sized>(source: &S, p: f64) -> Result<f64> {
    if !(0.0..=100.0).contains(&p) {
        return Err(EdaError::invalid(format!("percentile {p} outside [0, 100]")));
    }
    let values = source.present_values()?;
    require(values.len(), 1)?;
    Ok(quantile_sorted(&sorted_copy(&values), p / 100.0))
}

pub fn median<S: NumericSource + ?Sized>(source: &S) -> Result<f64> {
    percentile(source, 50.0)
}

pub fn skewness<S: NumericSource + ?Sized>(source: &S, mode: SkewnessMode) -> Result<f64> {
    let values = source.present_values()?;
    match mode {
        SkewnessMode::PearsonMedian => {
            require(values.len(), 2)?;
            let sd = std_dev(&values)?;
            if sd == 0.0 {
                return Err(EdaError::ZeroVariance("undefined skewness".into()));
            }
            let med = quantile_sorted(&sorted_copy(&values), 0.5);
            Ok(3.0 * (mean(&values) - med) / sd)
        }
        SkewnessMode::Moment => {
            require(values.len(), 3)?;
            central_moments(&values)
                .skew_adjusted()
                .ok_or_else(|| EdaError::ZeroVariance("undefined skewness".into()))
        }
    }
}

/// Sample-adjusted excess kurtosis and its tail classification.
pub fn kurtosis<S: NumericSource + ?Sized>(source: &S) -> Result<(f64, KurtosisClass)> {
    let values = source.present_values()?;
    require(values.len(), 4)?;
    let excess = central_moments(&values)
        .kurtosis_adjusted()
        .ok_or_else(|| EdaError::ZeroVariance("undefined kurtosis".into()))?;
    Ok((excess, KurtosisClass::from_excess(excess)))
}

/// Sturges bin count for `n` values.
pub fn sturges_bins(n: usize) -> usize {
    if n <= 1 {
        1
    } else {
        (n as f64).log2().ceil() as usize + 1
    }
}

/// Equal-width histogram over `[min, max]`.
///
/// A constant sample yields one zero-width bin holding every value.
pub fn histogram<S: NumericSource + ?Sized>(source: &S, bins: BinSpec) -> Result<Histogram> {
    let values = source.present_values()?;
    require(values.len(), 1)?;
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });

    if min == max {
        return Ok(Histogram {
            edges: vec![min, max],
            counts: vec![values.len()],
            underflow: 0,
            overflow: 0,
        });
    }

    let (n_bins, width) = match bins {
        BinSpec::Auto => {
            let k = sturges_bins(values.len());
            (k, (max - min) / k as f64)
        }
        BinSpec::Fixed(k) => {
            if k == 0 {
                return Err(EdaError::invalid("bin count must be at least 1"));
            }
            (k, (max - min) / k as f64)
        }
        BinSpec::Width(w) => {
            if !(w > 0.0 && w.is_finite()) {
                return Err(EdaError::invalid("bin width must be positive"));
            }
            (((max - min) / w).ceil().max(1.0) as usize, w)
        }
    };

    let mut edges: Vec<f64> = (0..=n_bins).map(|i| min + i as f64 * width).collect();
    if !matches!(bins, BinSpec::Width(_)) {
        edges[n_bins] = max;
    }
    let mut counts = vec![0usize; n_bins];
    for &v in values.iter() {
        counts[bin_index(&edges, v)] += 1;
    }
    Ok(Histogram {
        edges,
        counts,
        underflow: 0,
        overflow: 0,
    })
}

/// Bin of `v` for half-open bins with a closed final bin. `v` must lie in
/// `[edges[0], edges[last]]`.
pub(crate) fn bin_index(edges: &[f64], v: f64) -> usize {
    let n = edges.len() - 1;
    let width = (edges[n] - edges[0]) / n as f64;
    let mut i = if width > 0.0 {
        (((v - edges[0]) / width).floor().max(0.0) as usize).min(n - 1)
    } else {
        0
    };
    while i > 0 && v < edges[i] {
        i -= 1;
    }
    while i + 1 < n && v >= edges[i + 1] {
        i += 1;
    }
    i
}
