//! Brute-force reference implementations used to check the library.
//! Written for clarity, not speed; none of them call into `eda_core`
//! numerics.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};

pub fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    s
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() as f64 - 1.0)
}

/// Linear interpolation at position `(n - 1) p` of the sorted data.
pub fn quantile(v: &[f64], p: f64) -> f64 {
    let s = sorted(v);
    let pos = (s.len() - 1) as f64 * p;
    let i = pos.floor() as usize;
    if i + 1 >= s.len() {
        return s[s.len() - 1];
    }
    s[i] + (pos - i as f64) * (s[i + 1] - s[i])
}

/// Most frequent value, counting every candidate against every value; the
/// smallest value wins ties.
pub fn mode(v: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    let mut best_count = 0;
    for &c in v {
        let count = v.iter().filter(|&&x| x == c).count();
        if count > best_count || (count == best_count && c < best) {
            best = c;
            best_count = count;
        }
    }
    best
}

pub fn pearson_skew(v: &[f64]) -> f64 {
    let sd = variance(v).sqrt();
    if sd == 0.0 {
        0.0
    } else {
        3.0 * (mean(v) - quantile(v, 0.5)) / sd
    }
}

/// Adjusted Fisher–Pearson skewness from standardized values.
pub fn moment_skew(v: &[f64]) -> Option<f64> {
    let n = v.len() as f64;
    let sd = variance(v).sqrt();
    if v.len() < 3 || sd == 0.0 {
        return None;
    }
    let m = mean(v);
    let s3: f64 = v.iter().map(|x| ((x - m) / sd).powi(3)).sum();
    Some(n / ((n - 1.0) * (n - 2.0)) * s3)
}

/// Sample excess kurtosis from standardized values.
pub fn excess_kurtosis(v: &[f64]) -> Option<f64> {
    let n = v.len() as f64;
    let sd = variance(v).sqrt();
    if v.len() < 4 || sd == 0.0 {
        return None;
    }
    let m = mean(v);
    let s4: f64 = v.iter().map(|x| ((x - m) / sd).powi(4)).sum();
    Some(
        n * (n + 1.0) / ((n - 1.0) * (n - 2.0) * (n - 3.0)) * s4
            - 3.0 * (n - 1.0).powi(2) / ((n - 2.0) * (n - 3.0)),
    )
}

/// `|a - b| <= tol * max(|b|, scale)`.
pub fn close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(scale)
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let (mx, my) = (mean(x), mean(y));
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

/// Average ranks: values below plus the mean position inside the tie group.
pub fn ranks(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|&x| {
            let below = v.iter().filter(|&&y| y < x).count() as f64;
            let equal = v.iter().filter(|&&y| y == x).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Tau-b by counting every pair.
pub fn kendall(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut tied_x, mut tied_y) = (0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i].partial_cmp(&x[j]).unwrap();
            let dy = y[i].partial_cmp(&y[j]).unwrap();
            use std::cmp::Ordering::Equal;
            match (dx, dy) {
                (Equal, Equal) => {
                    tied_x += 1;
                    tied_y += 1;
                }
                (Equal, _) => tied_x += 1,
                (_, Equal) => tied_y += 1,
                (a, b) if a == b => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let n0 = (n * (n - 1) / 2) as i64;
    ((concordant - discordant) as f64) / (((n0 - tied_x) as f64) * ((n0 - tied_y) as f64)).sqrt()
}

/// Eigenvalues of the sample covariance of `rows`, descending.
pub fn covariance_eigenvalues(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len();
    let d = rows[0].len();
    let x = DMatrix::from_fn(n, d, |i, j| rows[i][j]);
    let means = x.row_mean();
    let centered = DMatrix::from_fn(n, d, |i, j| x[(i, j)] - means[j]);
    let cov = centered.transpose() * &centered / (n as f64 - 1.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(cov).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

/// Partial autocorrelation at lag `h` as the last coefficient of a least
/// squares regression of `x_t` on `x_{t-1}, ..., x_{t-h}`.
///
/// The centered series is padded with `h` zeros on both sides, which makes
/// the normal equations use the same `1/n` autocovariances as the biased
/// ACF, so the result is comparable with Yule–Walker estimates to rounding.
pub fn pacf_ols(x: &[f64], h: usize) -> f64 {
    let m = mean(x);
    let mut z = vec![0.0; h];
    z.extend(x.iter().map(|v| v - m));
    z.extend(std::iter::repeat_n(0.0, h));
    let rows = z.len() - h;
    let design = DMatrix::from_fn(rows, h, |r, c| z[r + h - 1 - c]);
    let target = DVector::from_fn(rows, |r, _| z[r + h]);
    let xtx = design.transpose() * &design;
    let xty = design.transpose() * target;
    let beta = xtx.lu().solve(&xty).expect("regression design is singular");
    beta[h - 1]
}

/// Same regression on the unpadded series (`t = h .. n-1`).
pub fn pacf_ols_plain(x: &[f64], h: usize) -> f64 {
    let n = x.len();
    let design = DMatrix::from_fn(n - h, h + 1, |r, c| if c == 0 { 1.0 } else { x[r + h - c] });
    let target = DVector::from_fn(n - h, |r, _| x[r + h]);
    let beta = (design.transpose() * &design)
        .lu()
        .solve(&(design.transpose() * target))
        .expect("regression design is singular");
    beta[h]
}

/// Partition of row indices as a canonical sorted list of sorted groups.
pub fn partition<L: PartialEq + Copy>(labels: &[L], skip: Option<L>) -> Vec<Vec<usize>> {
    let mut groups: Vec<(L, Vec<usize>)> = Vec::new();
    for (i, &l) in labels.iter().enumerate() {
        if Some(l) == skip {
            continue;
        }
        match groups.iter_mut().find(|g| g.0 == l) {
            Some(g) => g.1.push(i),
            None => groups.push((l, vec![i])),
        }
    }
    let mut out: Vec<Vec<usize>> = groups.into_iter().map(|g| g.1).collect();
    out.sort();
    out
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
