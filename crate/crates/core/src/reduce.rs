//! Principal component analysis via eigendecomposition of the sample
//! covariance matrix.

use serde::{Deserialize, Serialize};

use crate::error::{EdaError, Result};
use crate::linalg::{jacobi_eigen, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub means: Vec<f64>,
    /// Per-feature divisors applied after centering; all ones unless the
    /// model was fitted with `standardize`.
    pub scales: Vec<f64>,
    /// `k × d`, orthonormal rows.
    pub components: Matrix,
    pub explained_variance: Vec<f64>,
    pub explained_ratio: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcaOptions {
    /// Divide each centered feature by its sample standard deviation
    /// (correlation PCA).
    pub standardize: bool,
}

impl PcaModel {
    pub fn n_components(&self) -> usize {
        self.components.nrows()
    }

    pub fn n_features(&self) -> usize {
        self.components.ncols()
    }
}

pub fn fit_pca(data: &Matrix, k: usize) -> Result<PcaModel> {
    fit_pca_with(data, k, PcaOptions::default())
}

pub fn fit_pca_with(data: &Matrix, k: usize, options: PcaOptions) -> Result<PcaModel> {
    let (n, d) = (data.nrows(), data.ncols());
    if n < 2 {
        return Err(EdaError::InsufficientData { needed: 2, got: n });
    }
    if k < 1 || k > (n - 1).min(d) {
        return Err(EdaError::invalid(format!(
            "k = {k} outside [1, {}]",
            (n - 1).min(d)
        )));
    }
    if !data.is_finite() {
        return Err(EdaError::invalid("PCA input has missing or non-finite cells"));
    }

    let means = data.column_means();
    let mut cov = data.covariance()?;
    let scales = if options.standardize {
        let s: Vec<f64> = (0..d).map(|j| cov[(j, j)].sqrt()).collect();
        if s.contains(&0.0) {
            return Err(EdaError::Degenerate(
                "constant feature cannot be standardized".into(),
            ));
        }
        for i in 0..d {
            for j in 0..d {
                cov[(i, j)] /= s[i] * s[j];
            }
        }
        s
    } else {
        vec![1.0; d]
    };

    let total: f64 = (0..d).map(|j| cov[(j, j)]).sum();
    if !(total > 0.0) {
        return Err(EdaError::Degenerate("data has zero variance".into()));
    }

    let eig = jacobi_eigen(&cov)?;
    let mut components = Matrix::zeros(k, d);
    for r in 0..k {
        let v = eig.vectors.row(r);
        let pivot = (0..d)
            .max_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()).then(b.cmp(&a)))
            .unwrap_or(0);
        let sign = if v[pivot] < 0.0 { -1.0 } else { 1.0 };
        for (c, x) in components.row_mut(r).iter_mut().zip(v) {
            *c = sign * x;
        }
    }
    let explained_variance: Vec<f64> = eig.values[..k].iter().map(|&l| l.max(0.0)).collect();
    let explained_ratio = explained_variance.iter().map(|l| l / total).collect();
    Ok(PcaModel {
        means,
        scales,
        components,
        explained_variance,
        explained_ratio,
    })
}

/// Projects rows onto the principal components: `(x - means) / scales · Cᵀ`.
pub fn transform_pca(m: &PcaModel, data: &Matrix) -> Result<Matrix> {
    let d = m.n_features();
    if data.ncols() != d {
        return Err(EdaError::LengthMismatch {
            expected: d,
            got: data.ncols(),
        });
    }
    let k = m.n_components();
    let mut scores = Matrix::zeros(data.nrows(), k);
    let mut centered = vec![0.0; d];
    for (i, row) in data.rows().enumerate() {
        for j in 0..d {
            centered[j] = (row[j] - m.means[j]) / m.scales[j];
        }
        for c in 0..k {
            scores[(i, c)] = m
                .components
                .row(c)
                .iter()
                .zip(&centered)
                .map(|(a, b)| a * b)
                .sum();
        }
    }
    Ok(scores)
}

/// Maps scores back to feature space: `scores · C * scales + means`.
pub fn reconstruct(m: &PcaModel, scores: &Matrix) -> Result<Matrix> {
    let k = m.n_components();
    if scores.ncols() != k {
        return Err(EdaError::LengthMismatch {
            expected: k,
            got: scores.ncols(),
        });
    }
    let mut out = scores.matmul(&m.components)?;
    for i in 0..out.nrows() {
        for (j, v) in out.row_mut(i).iter_mut().enumerate() {
            *v = *v * m.scales[j] + m.means[j];
        }
    }
    Ok(out)
}
