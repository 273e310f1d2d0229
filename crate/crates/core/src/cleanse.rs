//! Missing-value imputation, outlier detection and handling, transforms,
//! categorical encoding, binning and simple feature construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{EdaError, Result};
use crate::stats::{self, quantile_sorted};
use crate::table::{format_number, Column, ColumnData, ColumnKind, Table};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OutlierMethod {
    ZScore { threshold: f64 },
    Iqr { k: f64 },
}

impl OutlierMethod {
    pub const DEFAULT_Z: OutlierMethod = OutlierMethod::ZScore { threshold: 3.0 };
    pub const DEFAULT_IQR: OutlierMethod = OutlierMethod::Iqr { k: 1.5 };
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutlierReport {
    pub column: String,
    pub method: OutlierMethod,
    pub outlier_row_indices: Vec<usize>,
    pub bounds: (f64, f64),
    /// Length of the column the report was computed on.
    pub row_count: usize,
}

/// Flags values outside the method's fences. Missing cells are never
/// flagged.
pub fn detect_outliers(c: &Column, method: OutlierMethod) -> Result<OutlierReport> {
    let values = c.numeric_values()?;
    let present = c.present_numeric()?;
    let (lower, upper) = match method {
        OutlierMethod::ZScore { threshold } => {
            if !(threshold > 0.0) {
                return Err(EdaError::invalid("z-score threshold must be positive"));
            }
            if present.len() < 2 {
                return Err(EdaError::InsufficientData {
                    needed: 2,
                    got: present.len(),
                });
            }
            let m = stats::mean(&present);
            let sd = stats::std_dev(&present)?;
            if sd == 0.0 {
                return Err(EdaError::ZeroVariance(format!("column `{}`", c.name())));
            }
            (m - threshold * sd, m + threshold * sd)
        }
        OutlierMethod::Iqr { k } => {
            if !(k >= 0.0) {
                return Err(EdaError::invalid("IQR multiplier must be non-negative"));
            }
            if present.len() < 4 {
                return Err(EdaError::InsufficientData {
                    needed: 4,
                    got: present.len(),
                });
            }
            let mut sorted = present;
            sorted.sort_by(f64::total_cmp);
            let q1 = quantile_sorted(&sorted, 0.25);
            let q3 = quantile_sorted(&sorted, 0.75);
            let iqr = q3 - q1;
            (q1 - k * iqr, q3 + k * iqr)
        }
    };
    let outlier_row_indices = values
        .iter()
        .enumerate()
        .filter(|&(i, &v)| !c.is_missing(i) && (v < lower || v > upper))
        .map(|(i, _)| i)
        .collect();
    Ok(OutlierReport {
        column: c.name().to_string(),
        method,
        outlier_row_indices,
        bounds: (lower, upper),
        row_count: c.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutlierAction {
    Remove,
    Clip,
    Flag,
}

#[derive(Debug, Clone, PartialEq)]
pub enum HandledOutliers {
    /// Row mask to apply table-wide: `false` marks a row to drop.
    Remove { keep: Vec<bool> },
    Clipped(Column),
    /// Companion boolean column named `<column>_outlier`.
    Flagged(Column),
}

pub fn handle_outliers(
    c: &Column,
    report: &OutlierReport,
    action: OutlierAction,
) -> Result<HandledOutliers> {
    let values = c.numeric_values()?;
    if report.row_count != c.len() || report.column != c.name() {
        return Err(EdaError::invalid(format!(
            "stale outlier report: computed for `{}` with {} rows, got `{}` with {} rows",
            report.column,
            report.row_count,
            c.name(),
            c.len()
        )));
    }
    let mut flagged = vec![false; c.len()];
    for &i in &report.outlier_row_indices {
        *flagged.get_mut(i).ok_or(EdaError::LengthMismatch {
            expected: c.len(),
            got: i + 1,
        })? = true;
    }
    let (lo, hi) = report.bounds;
    Ok(match action {
        OutlierAction::Remove => HandledOutliers::Remove {
            keep: flagged.iter().map(|f| !f).collect(),
        },
        OutlierAction::Clip => HandledOutliers::Clipped(Column::numeric(
            c.name(),
            values.iter().enumerate().map(|(i, &v)| {
                (!c.is_missing(i)).then(|| if flagged[i] { v.clamp(lo, hi) } else { v })
            }),
        )),
        OutlierAction::Flag => HandledOutliers::Flagged(Column::boolean(
            format!("{}_outlier", c.name()),
            flagged.into_iter().map(Some),
        )),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FillValue {
    Number(f64),
    Label(String),
    Flag(bool),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ImputeStrategy {
    Mean,
    Median,
    Mode,
    Constant(FillValue),
    /// Ordinary least squares `target = a + b * predictor`.
    LinearRegression { predictor: String },
}

/// Replaces every missing cell of `c`. Present cells are copied unchanged.
/// `context` supplies the predictor column for regression imputation.
pub fn impute(c: &Column, strategy: &ImputeStrategy, context: &Table) -> Result<Column> {
    if c.null_count() == 0 {
        return Ok(c.clone());
    }
    let all_missing = c.null_count() == c.len();
    let statistical = !matches!(strategy, ImputeStrategy::Constant(_));
    if all_missing && statistical {
        return Err(EdaError::InsufficientData { needed: 1, got: 0 });
    }

    match (c.data(), strategy) {
        (ColumnData::Numeric(values), _) => {
            let fill: Vec<f64> = match strategy {
                ImputeStrategy::Mean => vec![stats::mean(&c.present_numeric()?); c.len()],
                ImputeStrategy::Median => vec![stats::median(c)?; c.len()],
                ImputeStrategy::Mode => {
                    let mut present = c.present_numeric()?;
                    present.sort_by(f64::total_cmp);
                    vec![mode_of(present.iter().map(|v| OrdF64(*v))).0; c.len()]
                }
                ImputeStrategy::Constant(FillValue::Number(v)) if v.is_finite() => {
                    vec![*v; c.len()]
                }
                ImputeStrategy::Constant(other) => {
                    return Err(EdaError::invalid(format!(
                        "constant {other:?} is not a finite number for numeric column `{}`",
                        c.name()
                    )))
                }
                ImputeStrategy::LinearRegression { predictor } => {
                    regression_fill(c, context.column(predictor)?)?
                }
            };
            Ok(Column::numeric(
                c.name(),
                values
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Some(if c.is_missing(i) { fill[i] } else { v })),
            ))
        }
        (ColumnData::Categorical(values), ImputeStrategy::Mode | ImputeStrategy::Constant(_)) => {
            let fill = match strategy {
                ImputeStrategy::Constant(FillValue::Label(s)) if !s.is_empty() => s.clone(),
                ImputeStrategy::Constant(other) => {
                    return Err(EdaError::invalid(format!(
                        "constant {other:?} is not a label for categorical column `{}`",
                        c.name()
                    )))
                }
                _ => mode_of(
                    values
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !c.is_missing(*i))
                        .map(|(_, s)| s.as_str()),
                )
                .to_string(),
            };
            Ok(Column::categorical(
                c.name(),
                values
                    .iter()
                    .enumerate()
                    .map(|(i, s)| Some(if c.is_missing(i) { fill.clone() } else { s.clone() })),
            ))
        }
        (ColumnData::Boolean(values), ImputeStrategy::Mode | ImputeStrategy::Constant(_)) => {
            let fill = match strategy {
                ImputeStrategy::Constant(FillValue::Flag(b)) => *b,
                ImputeStrategy::Constant(FillValue::Number(v)) if *v == 0.0 || *v == 1.0 => {
                    *v == 1.0
                }
                ImputeStrategy::Constant(other) => {
                    return Err(EdaError::invalid(format!(
                        "constant {other:?} is not 0/1 for boolean column `{}`",
                        c.name()
                    )))
                }
                _ => mode_of(
                    values
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !c.is_missing(*i))
                        .map(|(_, &b)| b),
                ),
            };
            Ok(Column::boolean(
                c.name(),
                values
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| Some(if c.is_missing(i) { fill } else { b })),
            ))
        }
        (_, s) => Err(EdaError::invalid(format!(
            "strategy {s:?} needs a numeric column, `{}` is {}",
            c.name(),
            c.kind()
        ))),
    }
}

#[derive(Clone, Copy)]
struct OrdF64(f64);
impl PartialEq for OrdF64 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}
impl Eq for OrdF64 {}
impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Most frequent item; the smallest wins a tie.
fn mode_of<T: Ord + Clone, I: IntoIterator<Item = T>>(items: I) -> T {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for it in items {
        *counts.entry(it).or_default() += 1;
    }
    let max = counts.values().copied().max().unwrap_or(0);
    counts
        .into_iter()
        .find(|(_, n)| *n == max)
        .map(|(v, _)| v)
        .expect("mode of an empty sample")
}

fn regression_fill(target: &Column, predictor: &Column) -> Result<Vec<f64>> {
    let x = predictor.f64_cells()?;
    if x.len() != target.len() {
        return Err(EdaError::LengthMismatch {
            expected: target.len(),
            got: x.len(),
        });
    }
    let pairs: Vec<(f64, f64)> = (0..target.len())
        .filter_map(|i| Some((x[i]?, target.f64_cell(i)?)))
        .collect();
    if pairs.len() < 2 {
        return Err(EdaError::InsufficientData {
            needed: 2,
            got: pairs.len(),
        });
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(EdaError::ZeroVariance(format!(
            "predictor `{}` is constant",
            predictor.name()
        )));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    (0..target.len())
        .map(|i| {
            if !target.is_missing(i) {
                return Ok(0.0);
            }
            let xi = x[i].ok_or_else(|| {
                EdaError::invalid(format!(
                    "predictor `{}` is missing at row {i} where the target is missing",
                    predictor.name()
                ))
            })?;
            Ok(intercept + slope * xi)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TransformKind {
    Log,
    Sqrt,
    MinMax { lo: f64, hi: f64 },
    ZScoreStandardize,
}

pub fn transform(c: &Column, kind: TransformKind) -> Result<Column> {
    let values = c.numeric_values()?;
    let present = c.present_numeric()?;
    let rows = || values.iter().enumerate().filter(|(i, _)| !c.is_missing(*i));

    let f: Box<dyn Fn(f64) -> f64> = match kind {
        TransformKind::Log => {
            if let Some((row, v)) = rows().find(|(_, &v)| v <= 0.0) {
                return Err(EdaError::OutOfRange {
                    row,
                    message: format!("log of non-positive value {v}"),
                });
            }
            Box::new(f64::ln)
        }
        TransformKind::Sqrt => {
            if let Some((row, v)) = rows().find(|(_, &v)| v < 0.0) {
                return Err(EdaError::OutOfRange {
                    row,
                    message: format!("square root of negative value {v}"),
                });
            }
            Box::new(f64::sqrt)
        }
        TransformKind::MinMax { lo, hi } => {
            if !(lo < hi) {
                return Err(EdaError::invalid("min-max target needs lo < hi"));
            }
            let min = present.iter().copied().fold(f64::INFINITY, f64::min);
            let max = present.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !(max > min) {
                return Err(EdaError::ZeroVariance("zero range".into()));
            }
            Box::new(move |x| {
                if x == max {
                    hi
                } else {
                    (lo + (x - min) * (hi - lo) / (max - min)).clamp(lo, hi)
                }
            })
        }
        TransformKind::ZScoreStandardize => {
            let m = stats::mean(&present);
            let sd = stats::std_dev(&present)?;
            if sd == 0.0 {
                return Err(EdaError::ZeroVariance("zero variance".into()));
            }
            Box::new(move |x| (x - m) / sd)
        }
    };
    Ok(Column::numeric(
        c.name(),
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| (!c.is_missing(i)).then(|| f(v))),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EncodeKind {
    OneHot,
    Label,
}

/// Replaces a categorical column by one-hot indicator columns
/// (`<col>=<label>`) or by integer codes, labels in ascending order.
pub fn encode(t: &Table, column: &str, kind: EncodeKind) -> Result<Table> {
    let c = t.column(column)?;
    let ColumnData::Categorical(values) = c.data() else {
        return Err(c.kind_error("Categorical"));
    };
    let labels: Vec<&str> = {
        let mut l: Vec<&str> = values
            .iter()
            .enumerate()
            .filter(|(i, _)| !c.is_missing(*i))
            .map(|(_, s)| s.as_str())
            .collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    let replacements = match kind {
        EncodeKind::OneHot => labels
            .iter()
            .map(|&label| {
                Column::boolean(
                    format!("{column}={label}"),
                    (0..c.len()).map(|i| (!c.is_missing(i)).then(|| values[i] == label)),
                )
            })
            .collect(),
        EncodeKind::Label => {
            let code: BTreeMap<&str, f64> = labels
                .iter()
                .enumerate()
                .map(|(i, &l)| (l, i as f64))
                .collect();
            vec![Column::numeric(
                column,
                (0..c.len()).map(|i| (!c.is_missing(i)).then(|| code[values[i].as_str()])),
            )]
        }
    };
    t.splice_column(column, replacements)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BinningSpec {
    EqualWidth(usize),
    Quantile(usize),
    Edges(Vec<f64>),
}

/// Discretizes a numeric column into `[lo,hi)` labelled bins; the final bin
/// is closed.
pub fn bin(c: &Column, spec: &BinningSpec) -> Result<Column> {
    let values = c.numeric_values()?;
    let present = c.present_numeric()?;
    let edges: Vec<f64> = match spec {
        BinningSpec::EqualWidth(n) | BinningSpec::Quantile(n) if *n == 0 => {
            return Err(EdaError::invalid("bin count must be at least 1"));
        }
        _ if present.is_empty() && !matches!(spec, BinningSpec::Edges(_)) => {
            return Err(EdaError::InsufficientData { needed: 1, got: 0 });
        }
        BinningSpec::EqualWidth(n) => {
            let min = present.iter().copied().fold(f64::INFINITY, f64::min);
            let max = present.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if min == max {
                vec![min, max]
            } else {
                let w = (max - min) / *n as f64;
                let mut e: Vec<f64> = (0..=*n).map(|i| min + i as f64 * w).collect();
                e[*n] = max;
                e
            }
        }
        BinningSpec::Quantile(n) => {
            let mut sorted = present.clone();
            sorted.sort_by(f64::total_cmp);
            let mut e: Vec<f64> = (0..=*n)
                .map(|i| quantile_sorted(&sorted, i as f64 / *n as f64))
                .collect();
            e.dedup();
            if e.len() == 1 {
                e.push(e[0]);
            }
            e
        }
        BinningSpec::Edges(e) => {
            if e.len() < 2 || e.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(EdaError::invalid(
                    "explicit edges must be at least two strictly increasing values",
                ));
            }
            e.clone()
        }
    };
    let n_bins = edges.len() - 1;
    let labels: Vec<String> = (0..n_bins)
        .map(|i| {
            let close = if i + 1 == n_bins { ']' } else { ')' };
            format!(
                "[{},{}{close}",
                format_number(edges[i]),
                format_number(edges[i + 1])
            )
        })
        .collect();
    let (lo, hi) = (edges[0], edges[n_bins]);
    let cells = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if c.is_missing(i) {
                return Ok(None);
            }
            if v < lo || v > hi {
                return Err(EdaError::OutOfRange {
                    row: i,
                    message: format!("value {v} outside bin edges [{lo}, {hi}]"),
                });
            }
            Ok(Some(labels[stats::bin_index(&edges, v)].clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Column::categorical(c.name(), cells))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Feature {
    Product(String, String),
    Power(String, i32),
}

/// Appends `<a>*<b>` / `<a>^k` columns; missing inputs propagate.
pub fn engineer(t: &Table, spec: &[Feature]) -> Result<Table> {
    let mut out = t.clone();
    for feature in spec {
        let numeric = |name: &str| -> Result<Vec<Option<f64>>> {
            let c = t.column(name)?;
            if c.kind() != ColumnKind::Numeric {
                return Err(c.kind_error("Numeric"));
            }
            c.f64_cells()
        };
        let col = match feature {
            Feature::Product(a, b) => {
                let (xa, xb) = (numeric(a)?, numeric(b)?);
                Column::numeric(
                    format!("{a}*{b}"),
                    xa.iter().zip(&xb).map(|(x, y)| Some((*x)? * (*y)?)),
                )
            }
            Feature::Power(a, k) => {
                let xa = numeric(a)?;
                Column::numeric(
                    format!("{a}^{k}"),
                    xa.iter().map(|x| x.map(|v| v.powi(*k))),
                )
            }
        };
        out = out.with_column(col)?;
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::borrow::Cow;

    fn present_labels(c: &Column) -> Vec<Cow<'_, str>> {
        (0..c.len()).filter_map(|i| c.label(i)).collect()
    }

    fn col(v: &[f64]) -> Column {
        Column::from_f64s("x", v)
    }

    #[test]
    fn iqr_example() {
        let r = detect_outliers(&col(&[1.0, 2.0, 3.0, 4.0, 100.0]), OutlierMethod::DEFAULT_IQR)
            .unwrap();
        assert_eq!(r.bounds, (-1.0, 7.0));
        assert_eq!(r.outlier_row_indices, vec![4]);
    }

    #[test]
    fn zscore_example() {
        let mut v = vec![0.0; 10];
        v.push(10.0);
        let r = detect_outliers(&col(&v), OutlierMethod::DEFAULT_Z).unwrap();
        assert_eq!(r.outlier_row_indices, vec![10]);
        assert!(matches!(
            detect_outliers(&col(&[2.0, 2.0, 2.0]), OutlierMethod::DEFAULT_Z),
            Err(EdaError::ZeroVariance(_))
        ));
    }

    #[test]
    fn iqr_constant_has_no_outliers() {
        let r = detect_outliers(&col(&[5.0; 4]), OutlierMethod::DEFAULT_IQR).unwrap();
        assert!(r.outlier_row_indices.is_empty());
        assert!(detect_outliers(&col(&[1.0, 2.0, 3.0]), OutlierMethod::DEFAULT_IQR).is_err());
    }

    #[test]
    fn missing_never_flagged() {
        let c = Column::numeric("x", [Some(1.0), Some(2.0), None, Some(3.0), Some(4.0), Some(100.0)]);
        let r = detect_outliers(&c, OutlierMethod::DEFAULT_IQR).unwrap();
        assert_eq!(r.outlier_row_indices, vec![5]);
    }

    #[test]
    fn handle_actions() {
        let c = col(&[1.0, 2.0, 3.0, 4.0, 100.0]);
        let r = detect_outliers(&c, OutlierMethod::DEFAULT_IQR).unwrap();
        match handle_outliers(&c, &r, OutlierAction::Clip).unwrap() {
            HandledOutliers::Clipped(out) => {
                assert_eq!(out.numeric_values().unwrap(), &[1.0, 2.0, 3.0, 4.0, 7.0])
            }
            other => panic!("{other:?}"),
        }
        match handle_outliers(&c, &r, OutlierAction::Flag).unwrap() {
            HandledOutliers::Flagged(f) => {
                let ones: Vec<f64> = (0..5).filter_map(|i| f.f64_cell(i)).collect();
                assert_eq!(ones, vec![0.0, 0.0, 0.0, 0.0, 1.0]);
            }
            other => panic!("{other:?}"),
        }
        match handle_outliers(&c, &r, OutlierAction::Remove).unwrap() {
            HandledOutliers::Remove { keep } => assert_eq!(keep, vec![true, true, true, true, false]),
            other => panic!("{other:?}"),
        }
        let empty = OutlierReport {
            outlier_row_indices: vec![],
            ..r.clone()
        };
        match handle_outliers(&c, &empty, OutlierAction::Clip).unwrap() {
            HandledOutliers::Clipped(out) => assert_eq!(out, c),
            other => panic!("{other:?}"),
        }
        assert!(handle_outliers(&col(&[1.0, 2.0]), &r, OutlierAction::Clip).is_err());
    }

    #[test]
    fn impute_mean_and_identity() {
        let t = Table::empty("t", 3);
        let c = Column::numeric("x", [Some(1.0), None, Some(3.0)]);
        let out = impute(&c, &ImputeStrategy::Mean, &t).unwrap();
        assert_eq!(out.numeric_values().unwrap(), &[1.0, 2.0, 3.0]);
        assert_eq!(out.null_count(), 0);
        let full = col(&[1.0, 2.0, 3.0]);
        assert_eq!(impute(&full, &ImputeStrategy::Median, &t).unwrap(), full);
    }

    #[test]
    fn impute_regression() {
        let x = Column::from_f64s("x", &[1.0, 2.0, 3.0]);
        let y = Column::numeric("y", [Some(10.0), None, Some(30.0)]);
        let t = Table::new("t", vec![x, y.clone()]).unwrap();
        let out = impute(
            &y,
            &ImputeStrategy::LinearRegression {
                predictor: "x".into(),
            },
            &t,
        )
        .unwrap();
        assert!((out.f64_cell(1).unwrap() - 20.0).abs() < 1e-12);
    }

    #[test]
    fn impute_mode_ties_and_errors() {
        let t = Table::empty("t", 5);
        let c = Column::categorical("g", [Some("b"), Some("a"), None, Some("b"), Some("a")]);
        let out = impute(&c, &ImputeStrategy::Mode, &t).unwrap();
        assert_eq!(out.label(2).unwrap(), "a");

        let gone = Column::numeric("x", [None, None]);
        assert!(impute(&gone, &ImputeStrategy::Mean, &Table::empty("t", 2)).is_err());
        assert!(impute(&c, &ImputeStrategy::Mean, &t).is_err());
        let filled = impute(
            &gone,
            &ImputeStrategy::Constant(FillValue::Number(0.5)),
            &Table::empty("t", 2),
        )
        .unwrap();
        assert_eq!(filled.numeric_values().unwrap(), &[0.5, 0.5]);
    }

    #[test]
    fn transforms() {
        let e = std::f64::consts::E;
        let out = transform(&col(&[1.0, e, e * e]), TransformKind::Log).unwrap();
        let v = out.numeric_values().unwrap();
        assert!((v[0] - 0.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15 && (v[2] - 2.0).abs() < 1e-15);

        let mm = transform(&col(&[2.0, 4.0, 6.0]), TransformKind::MinMax { lo: 0.0, hi: 1.0 }).unwrap();
        assert_eq!(mm.numeric_values().unwrap(), &[0.0, 0.5, 1.0]);

        let z = transform(&col(&[1.0, 5.0, 9.0, 2.0]), TransformKind::ZScoreStandardize).unwrap();
        let s = stats::summarize(&z).unwrap();
        assert!(s.mean.abs() < 1e-15 && (s.std - 1.0).abs() < 1e-15);

        match transform(&col(&[1.0, 0.0]), TransformKind::Log) {
            Err(EdaError::OutOfRange { row, .. }) => assert_eq!(row, 1),
            other => panic!("{other:?}"),
        }
        assert!(transform(&col(&[3.0, 3.0]), TransformKind::MinMax { lo: 0.0, hi: 1.0 }).is_err());
        assert!(transform(&col(&[3.0, 3.0]), TransformKind::ZScoreStandardize).is_err());

        let m = Column::numeric("x", [Some(4.0), None]);
        assert!(transform(&m, TransformKind::Sqrt).unwrap().is_missing(1));
    }

    #[test]
    fn one_hot_and_label() {
        let g = Column::categorical("Geography", ["France", "Spain", "Germany", "France"].map(Some));
        let t = Table::new("t", vec![g.clone()]).unwrap();
        let oh = encode(&t, "Geography", EncodeKind::OneHot).unwrap();
        assert_eq!(
            oh.column_names(),
            vec!["Geography=France", "Geography=Germany", "Geography=Spain"]
        );
        for i in 0..4 {
            let s: f64 = oh.columns().iter().map(|c| c.f64_cell(i).unwrap()).sum();
            assert_eq!(s, 1.0);
        }

        let single = Table::new("t", vec![Column::categorical("c", ["x", "x"].map(Some))]).unwrap();
        let oh1 = encode(&single, "c", EncodeKind::OneHot).unwrap();
        assert_eq!(oh1.columns().len(), 1);
        assert_eq!(oh1.columns()[0].f64_cells().unwrap(), vec![Some(1.0), Some(1.0)]);

        let ba = Table::new("t", vec![Column::categorical("c", ["b", "a"].map(Some))]).unwrap();
        let lab = encode(&ba, "c", EncodeKind::Label).unwrap();
        assert_eq!(lab.column("c").unwrap().numeric_values().unwrap(), &[1.0, 0.0]);

        let num = Table::new("t", vec![col(&[1.0])]).unwrap();
        assert!(encode(&num, "x", EncodeKind::Label).is_err());
    }

    #[test]
    fn binning() {
        let b = bin(&col(&[0.0, 5.0, 10.0]), &BinningSpec::EqualWidth(2)).unwrap();
        let labels: Vec<_> = present_labels(&b).into_iter().map(|s| s.into_owned()).collect();
        assert_eq!(labels, vec!["[0,5)", "[5,10]", "[5,10]"]);

        assert!(bin(&col(&[2.0]), &BinningSpec::Edges(vec![0.0, 1.0])).is_err());

        let q = bin(&col(&[1., 2., 3., 4., 5., 6., 7., 8.]), &BinningSpec::Quantile(4)).unwrap();
        let vc = crate::table::value_counts(&q).unwrap();
        assert_eq!(vc.rows.len(), 4);
        assert!(vc.rows.iter().all(|r| r.count == 2));

        let constant = bin(&col(&[3.0, 3.0]), &BinningSpec::EqualWidth(3)).unwrap();
        assert_eq!(constant.label(0).unwrap(), "[3,3]");
    }

    #[test]
    fn features() {
        let t = Table::new(
            "t",
            vec![col(&[1.0, 2.0]), Column::from_f64s("y", &[3.0, 4.0])],
        )
        .unwrap();
        let out = engineer(
            &t,
            &[
                Feature::Product("x".into(), "y".into()),
                Feature::Product("x".into(), "x".into()),
                Feature::Power("x".into(), 2),
                Feature::Power("x".into(), 1),
            ],
        )
        .unwrap();
        assert_eq!(out.column("x*y").unwrap().numeric_values().unwrap(), &[3.0, 8.0]);
        assert_eq!(
            out.column("x*x").unwrap().numeric_values().unwrap(),
            out.column("x^2").unwrap().numeric_values().unwrap()
        );
        assert_eq!(out.column("x^1").unwrap().numeric_values().unwrap(), &[1.0, 2.0]);
        assert!(engineer(&t, &[Feature::Power("z".into(), 2)]).is_err());
    }
}
