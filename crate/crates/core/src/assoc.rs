//! Bivariate association: covariance, correlation coefficients,
//! contingency tables and correlation matrices.
//!
//! Every pairwise measure uses the rows where both inputs are present.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{EdaError, Result};
use crate::table::{Column, ColumnKind, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorrelationMethod {
    Pearson,
    Spearman,
    Kendall,
}

impl FromStr for CorrelationMethod {
    type Err = EdaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pearson" => Ok(CorrelationMethod::Pearson),
            "spearman" => Ok(CorrelationMethod::Spearman),
            "kendall" => Ok(CorrelationMethod::Kendall),
            other => Err(EdaError::invalid(format!("unknown correlation method `{other}`"))),
        }
    }
}

impl fmt::Display for CorrelationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorrelationMethod::Pearson => "pearson",
            CorrelationMethod::Spearman => "spearman",
            CorrelationMethod::Kendall => "kendall",
        })
    }
}

/// Labelled symmetric matrix of coefficients; `None` marks an undefined
/// coefficient (for instance a constant column), never a zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub method: CorrelationMethod,
    pub labels: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        self.values[i][j]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyTable {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub counts: Vec<Vec<usize>>,
}

impl ContingencyTable {
    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }
}

/// Jointly present `(x, y)` pairs of two numeric-like columns.
fn paired(x: &Column, y: &Column) -> Result<(Vec<f64>, Vec<f64>)> {
    if x.len() != y.len() {
        return Err(EdaError::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let xs = x.f64_cells()?;
    let ys = y.f64_cells()?;
    Ok(xs
        .into_iter()
        .zip(ys)
        .filter_map(|(a, b)| Some((a?, b?)))
        .unzip())
}

fn require_pairs(n: usize) -> Result<()> {
    if n < 2 {
        Err(EdaError::InsufficientData { needed: 2, got: n })
    } else {
        Ok(())
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sample covariance of two equal-length slices.
pub fn covariance_of(x: &[f64], y: &[f64]) -> Result<f64> {
    require_pairs(x.len())?;
    let (mx, my) = (mean(x), mean(y));
    let s: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    Ok(s / (x.len() - 1) as f64)
}

/// Pearson correlation of two equal-length slices.
pub fn pearson_of(x: &[f64], y: &[f64]) -> Result<f64> {
    require_pairs(x.len())?;
    let (mx, my) = (mean(x), mean(y));
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(EdaError::UndefinedCorrelation("zero variance".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Average (fractional) ranks starting at 1; tied values share the mean of
/// their rank positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let rank = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

pub fn spearman_of(x: &[f64], y: &[f64]) -> Result<f64> {
    pearson_of(&average_ranks(x), &average_ranks(y))
}

/// Kendall tau-b in `O(n log n)` (Knight's merge-sort algorithm).
pub fn kendall_of(x: &[f64], y: &[f64]) -> Result<f64> {
    require_pairs(x.len())?;
    let n = x.len() as u64;
    let mut pairs: Vec<(f64, f64)> = x.iter().copied().zip(y.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let tie_pairs = |run: u64| run * (run - 1) / 2;
    let runs = |eq: &dyn Fn(usize, usize) -> bool, len: usize| -> u64 {
        let mut total = 0;
        let mut start = 0;
        for i in 1..=len {
            if i == len || !eq(start, i) {
                total += tie_pairs((i - start) as u64);
                start = i;
            }
        }
        total
    };

    let n0 = tie_pairs(n);
    let x_ties = runs(&|a, b| pairs[a].0 == pairs[b].0, pairs.len());
    let joint_ties = runs(&|a, b| pairs[a] == pairs[b], pairs.len());

    let mut ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buf = vec![0.0; ys.len()];
    let swaps = merge_count(&mut ys, &mut buf);
    let y_ties = runs(&|a, b| ys[a] == ys[b], ys.len());

    if n0 == x_ties || n0 == y_ties {
        return Err(EdaError::UndefinedCorrelation(
            "all values tied in one variable".into(),
        ));
    }
    let concordant_minus_discordant =
        n0 as i64 - x_ties as i64 - y_ties as i64 + joint_ties as i64 - 2 * swaps as i64;
    Ok(concordant_minus_discordant as f64
        / (((n0 - x_ties) as f64) * ((n0 - y_ties) as f64)).sqrt())
}

/// Sorts `v` ascending, returning the number of strict inversions.
fn merge_count(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (l, r) = v.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        merge_count(l, bl) + merge_count(r, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[k] = v[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    swaps
}

pub fn covariance(x: &Column, y: &Column) -> Result<f64> {
    let (a, b) = paired(x, y)?;
    covariance_of(&a, &b)
}

pub fn pearson(x: &Column, y: &Column) -> Result<f64> {
    let (a, b) = paired(x, y)?;
    pearson_of(&a, &b)
}

pub fn spearman(x: &Column, y: &Column) -> Result<f64> {
    let (a, b) = paired(x, y)?;
    spearman_of(&a, &b)
}

pub fn kendall_tau(x: &Column, y: &Column) -> Result<f64> {
    let (a, b) = paired(x, y)?;
    kendall_of(&a, &b)
}

/// Point-biserial correlation from class means:
/// `(m1 - m0) / s * sqrt(n1 n0 / (n (n - 1)))`.
pub fn point_biserial(b: &Column, y: &Column) -> Result<f64> {
    if b.kind() != ColumnKind::Boolean {
        return Err(b.kind_error("Boolean"));
    }
    let (flags, ys) = paired(b, y)?;
    require_pairs(ys.len())?;
    let (mut n1, mut sum1, mut sum0) = (0usize, 0.0, 0.0);
    for (f, v) in flags.iter().zip(&ys) {
        if *f == 1.0 {
            n1 += 1;
            sum1 += v;
        } else {
            sum0 += v;
        }
    }
    let n = ys.len();
    let n0 = n - n1;
    if n1 == 0 || n0 == 0 {
        return Err(EdaError::UndefinedCorrelation(format!(
            "`{}` has a single class",
            b.name()
        )));
    }
    let my = mean(&ys);
    let ss: f64 = ys.iter().map(|v| (v - my) * (v - my)).sum();
    if ss == 0.0 {
        return Err(EdaError::UndefinedCorrelation("zero variance".into()));
    }
    let s = (ss / (n - 1) as f64).sqrt();
    let (m1, m0) = (sum1 / n1 as f64, sum0 / n0 as f64);
    let r = (m1 - m0) / s * ((n1 as f64 * n0 as f64) / (n as f64 * (n - 1) as f64)).sqrt();
    Ok(r.clamp(-1.0, 1.0))
}

/// Phi coefficient from the 2×2 table of two boolean columns.
pub fn phi(a: &Column, b: &Column) -> Result<f64> {
    for c in [a, b] {
        if c.kind() != ColumnKind::Boolean {
            return Err(c.kind_error("Boolean"));
        }
    }
    let (xa, xb) = paired(a, b)?;
    let mut n = [[0u64; 2]; 2];
    for (p, q) in xa.iter().zip(&xb) {
        n[*p as usize][*q as usize] += 1;
    }
    phi_from_counts(n)
}

/// Phi of a 2×2 table indexed `[a][b]`.
pub fn phi_from_counts(n: [[u64; 2]; 2]) -> Result<f64> {
    let row1 = n[1][0] + n[1][1];
    let row0 = n[0][0] + n[0][1];
    let col1 = n[0][1] + n[1][1];
    let col0 = n[0][0] + n[1][0];
    if row1 == 0 || row0 == 0 || col1 == 0 || col0 == 0 {
        return Err(EdaError::UndefinedCorrelation("zero marginal".into()));
    }
    let num = n[1][1] as f64 * n[0][0] as f64 - n[1][0] as f64 * n[0][1] as f64;
    let den = (row1 as f64 * row0 as f64 * col1 as f64 * col0 as f64).sqrt();
    Ok((num / den).clamp(-1.0, 1.0))
}

/// Cross-tabulation of two categorical or boolean columns, labels
/// ascending.
pub fn contingency(a: &Column, b: &Column) -> Result<ContingencyTable> {
    for c in [a, b] {
        if c.kind() == ColumnKind::Numeric {
            return Err(c.kind_error("Categorical or Boolean"));
        }
    }
    if a.len() != b.len() {
        return Err(EdaError::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut cells: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut rows = BTreeMap::new();
    let mut cols = BTreeMap::new();
    for i in 0..a.len() {
        for (c, set) in [(a, &mut rows), (b, &mut cols)] {
            if let Some(l) = c.label(i) {
                set.insert(l.into_owned(), 0usize);
            }
        }
        if let (Some(la), Some(lb)) = (a.label(i), b.label(i)) {
            *cells.entry((la.into_owned(), lb.into_owned())).or_default() += 1;
        }
    }
    for (i, v) in rows.values_mut().enumerate() {
        *v = i;
    }
    for (i, v) in cols.values_mut().enumerate() {
        *v = i;
    }
    let mut counts = vec![vec![0; cols.len()]; rows.len()];
    for ((ra, cb), n) in cells {
        counts[rows[&ra]][cols[&cb]] = n;
    }
    Ok(ContingencyTable {
        row_labels: rows.into_keys().collect(),
        col_labels: cols.into_keys().collect(),
        counts,
    })
}

/// One coefficient between two numeric or boolean columns.
pub fn correlate(x: &Column, y: &Column, method: CorrelationMethod) -> Result<f64> {
    match method {
        CorrelationMethod::Pearson => pearson(x, y),
        CorrelationMethod::Spearman => spearman(x, y),
        CorrelationMethod::Kendall => kendall_tau(x, y),
    }
}

/// Pairwise-deletion correlation matrix over the table's numeric and
/// boolean columns.
pub fn correlation_matrix(t: &Table, method: CorrelationMethod) -> Result<CorrelationMatrix> {
    let names = t.numeric_like_columns();
    correlation_matrix_of(t, &names, method)
}

pub fn correlation_matrix_of<S: AsRef<str>>(
    t: &Table,
    names: &[S],
    method: CorrelationMethod,
) -> Result<CorrelationMatrix> {
    let cols = names
        .iter()
        .map(|n| t.column(n.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    if let Some(c) = cols.iter().find(|c| c.kind() == ColumnKind::Categorical) {
        return Err(c.kind_error("Numeric or Boolean"));
    }
    if cols.len() < 2 {
        return Err(EdaError::InsufficientData {
            needed: 2,
            got: cols.len(),
        });
    }
    let d = cols.len();
    let mut values = vec![vec![None; d]; d];
    for i in 0..d {
        for j in i..d {
            let r = if i == j {
                // defined iff the column has spread
                correlate(cols[i], cols[i], CorrelationMethod::Pearson)
                    .ok()
                    .map(|_| 1.0)
            } else {
                correlate(cols[i], cols[j], method).ok()
            };
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        method,
        labels: cols.iter().map(|c| c.name().to_string()).collect(),
        values,
    })
}
