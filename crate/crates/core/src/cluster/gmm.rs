use serde::{Deserialize, Serialize};

use super::{check_data, kmeans, KMeansParams};
use crate::error::{EdaError, Result};
use crate::linalg::{cholesky, forward_substitute, Matrix};

/// Mixture weight below which a component is considered collapsed.
pub const COLLAPSE_WEIGHT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CovarianceType {
    #[default]
    Full,
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GmmParams {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub tol: f64,
    pub ridge: f64,
    pub covariance: CovarianceType,
}

impl GmmParams {
    pub fn new(k: usize, seed: u64) -> Self {
        GmmParams {
            k,
            seed,
            max_iter: 200,
            tol: 1e-8,
            ridge: 1e-6,
            covariance: CovarianceType::Full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmmModel {
    pub weights: Vec<f64>,
    pub means: Matrix,
    pub covariances: Vec<Matrix>,
    pub log_likelihood: f64,
    /// M-steps attempted, including a rejected final one.
    pub iterations: usize,
    pub seed: u64,
    pub ridge: f64,
    pub converged: bool,
    /// Log-likelihood after the initial M-step and after each accepted
    /// iteration.
    pub log_likelihood_history: Vec<f64>,
}

impl GmmModel {
    pub fn k(&self) -> usize {
        self.weights.len()
    }
}

/// Gaussian mixture fitted by expectation–maximisation.
///
/// Starts from the hard assignment of a k-means run with the same seed,
/// works in log space, adds `ridge · I` to every covariance update and
/// stops once the log-likelihood gains less than `tol`. A step that would
/// lower the log-likelihood is rejected and ends the fit, so the history
/// never decreases.
pub fn gmm(data: &Matrix, params: &GmmParams) -> Result<GmmModel> {
    check_data(data)?;
    if !(params.ridge > 0.0) {
        return Err(EdaError::invalid("ridge must be positive"));
    }
    let (n, d, k) = (data.nrows(), data.ncols(), params.k);
    let km = kmeans(data, &KMeansParams::new(k, params.seed))?;
    let mut resp = Matrix::zeros(n, k);
    for (i, &l) in km.labels.iter().enumerate() {
        resp[(i, l)] = 1.0;
    }
    let (mut weights, mut means, mut covs) = m_step(data, &resp, params)?;
    let mut ll = e_step(data, &weights, &means, &covs, &mut resp)?;
    let mut history = vec![ll];
    let mut iterations = 0;
    let mut converged = false;
    let mut next_resp = Matrix::zeros(n, k);
    while iterations < params.max_iter {
        let (w, m, c) = m_step(data, &resp, params)?;
        let next_ll = e_step(data, &w, &m, &c, &mut next_resp)?;
        iterations += 1;
        // The ridge makes the M-step inexact, so a step can lower the
        // likelihood near convergence. Such a step is discarded.
        if next_ll < ll {
            converged = true;
            break;
        }
        let gain = next_ll - ll;
        (weights, means, covs, ll) = (w, m, c, next_ll);
        std::mem::swap(&mut resp, &mut next_resp);
        history.push(ll);
        if gain < params.tol {
            converged = true;
            break;
        }
    }
    debug_assert_eq!(means.ncols(), d);
    Ok(GmmModel {
        weights,
        means,
        covariances: covs,
        log_likelihood: ll,
        iterations,
        seed: params.seed,
        ridge: params.ridge,
        converged,
        log_likelihood_history: history,
    })
}

type Params = (Vec<f64>, Matrix, Vec<Matrix>);

fn m_step(data: &Matrix, resp: &Matrix, params: &GmmParams) -> Result<Params> {
    let (n, d, k) = (data.nrows(), data.ncols(), resp.ncols());
    let mut weights = vec![0.0; k];
    let mut means = Matrix::zeros(k, d);
    let mut covs = Vec::with_capacity(k);
    for c in 0..k {
        let nk: f64 = (0..n).map(|i| resp[(i, c)]).sum();
        let w = nk / n as f64;
        if !(w >= COLLAPSE_WEIGHT) {
            return Err(EdaError::ComponentCollapse {
                component: c,
                weight: w,
            });
        }
        weights[c] = w;
        for (i, row) in data.rows().enumerate() {
            let r = resp[(i, c)];
            for (m, x) in means.row_mut(c).iter_mut().zip(row) {
                *m += r * x;
            }
        }
        means.row_mut(c).iter_mut().for_each(|m| *m /= nk);

        let mu = means.row(c).to_vec();
        let mut cov = Matrix::zeros(d, d);
        let mut dev = vec![0.0; d];
        for (i, row) in data.rows().enumerate() {
            let r = resp[(i, c)];
            if r == 0.0 {
                continue;
            }
            for j in 0..d {
                dev[j] = row[j] - mu[j];
            }
            for a in 0..d {
                for b in a..d {
                    cov[(a, b)] += r * dev[a] * dev[b];
                }
            }
        }
        for a in 0..d {
            for b in a..d {
                let v = if a == b || params.covariance == CovarianceType::Full {
                    cov[(a, b)] / nk
                } else {
                    0.0
                };
                cov[(a, b)] = v;
                cov[(b, a)] = v;
            }
            cov[(a, a)] += params.ridge;
        }
        covs.push(cov);
    }
    Ok((weights, means, covs))
}

/// Per-component log densities plus log weights, one row per point.
fn log_joint(data: &Matrix, weights: &[f64], means: &Matrix, covs: &[Matrix]) -> Result<Matrix> {
    let (n, d, k) = (data.nrows(), data.ncols(), weights.len());
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let mut out = Matrix::zeros(n, k);
    let mut dev = vec![0.0; d];
    for c in 0..k {
        let l = cholesky(&covs[c])?;
        let log_det: f64 = (0..d).map(|j| l[(j, j)].ln()).sum::<f64>() * 2.0;
        let base = weights[c].ln() - 0.5 * (d as f64 * ln_2pi + log_det);
        for (i, row) in data.rows().enumerate() {
            for j in 0..d {
                dev[j] = row[j] - means[(c, j)];
            }
            let y = forward_substitute(&l, &dev);
            let maha: f64 = y.iter().map(|v| v * v).sum();
            out[(i, c)] = base - 0.5 * maha;
        }
    }
    Ok(out)
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + v.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Fills `resp` with responsibilities and returns the total log-likelihood.
fn e_step(
    data: &Matrix,
    weights: &[f64],
    means: &Matrix,
    covs: &[Matrix],
    resp: &mut Matrix,
) -> Result<f64> {
    let joint = log_joint(data, weights, means, covs)?;
    let mut ll = 0.0;
    for i in 0..data.nrows() {
        let row = joint.row(i);
        let norm = log_sum_exp(row);
        ll += norm;
        let mut total = 0.0;
        for (c, &lj) in row.iter().enumerate() {
            let r = (lj - norm).exp();
            resp[(i, c)] = r;
            total += r;
        }
        // renormalise so each row sums to one to the last bit
        resp.row_mut(i).iter_mut().for_each(|r| *r /= total);
    }
    Ok(ll)
}

/// Most probable component per row and the full responsibility matrix.
pub fn gmm_predict(m: &GmmModel, data: &Matrix) -> Result<(Vec<usize>, Matrix)> {
    check_data(data)?;
    if data.ncols() != m.means.ncols() {
        return Err(EdaError::LengthMismatch {
            expected: m.means.ncols(),
            got: data.ncols(),
        });
    }
    let mut resp = Matrix::zeros(data.nrows(), m.k());
    e_step(data, &m.weights, &m.means, &m.covariances, &mut resp)?;
    let labels = resp
        .rows()
        .map(|r| {
            r.iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (c, &p)| {
                    if p > best.1 {
                        (c, p)
                    } else {
                        best
                    }
                })
                .0
        })
        .collect();
    Ok((labels, resp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Normal};

    fn two_blobs(seed: u64) -> Matrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let noise = Normal::new(0.0, 0.5).unwrap();
        let rows: Vec<[f64; 2]> = (0..400)
            .map(|i| {
                let (cx, cy) = if i % 2 == 0 { (0.0, 0.0) } else { (6.0, 4.0) };
                [cx + noise.sample(&mut rng), cy + noise.sample(&mut rng)]
            })
            .collect();
        Matrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn single_component_closed_form() {
        let data = Matrix::from_rows(&[[1.0, 2.0], [3.0, 1.0], [2.0, 5.0], [0.0, 0.0]]).unwrap();
        let m = gmm(&data, &GmmParams::new(1, 3)).unwrap();
        assert_eq!(m.weights, vec![1.0]);
        let mean = data.column_means();
        for (j, mu) in mean.iter().enumerate() {
            assert!((m.means[(0, j)] - mu).abs() < 1e-12);
        }
        let mut mle = data.covariance().unwrap();
        for a in 0..2 {
            for b in 0..2 {
                mle[(a, b)] *= 3.0 / 4.0;
            }
            mle[(a, a)] += 1e-6;
        }
        assert!(m.covariances[0].frobenius_distance(&mle) < 1e-12);
    }

    #[test]
    fn recovers_blob_means() {
        let data = two_blobs(5);
        let m = gmm(&data, &GmmParams::new(2, 11)).unwrap();
        let mut mus: Vec<Vec<f64>> = m.means.rows().map(<[f64]>::to_vec).collect();
        mus.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert!((mus[0][0] - 0.0).abs() < 0.1 && (mus[0][1] - 0.0).abs() < 0.1);
        assert!((mus[1][0] - 6.0).abs() < 0.1 && (mus[1][1] - 4.0).abs() < 0.1);
        assert!((m.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for w in m.log_likelihood_history.windows(2) {
            assert!(w[1] >= w[0] - 1e-10, "{} -> {}", w[0], w[1]);
        }
        let (labels, resp) = gmm_predict(&m, &data).unwrap();
        assert_eq!(labels.len(), 400);
        for r in resp.rows() {
            assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_covariances_have_zero_off_diagonal() {
        let data = two_blobs(8);
        let mut p = GmmParams::new(2, 1);
        p.covariance = CovarianceType::Diagonal;
        let m = gmm(&data, &p).unwrap();
        for c in &m.covariances {
            assert_eq!(c[(0, 1)], 0.0);
            assert!(c[(0, 0)] >= 1e-6);
        }
    }

    #[test]
    fn deterministic() {
        let data = two_blobs(2);
        assert_eq!(
            gmm(&data, &GmmParams::new(2, 4)).unwrap(),
            gmm(&data, &GmmParams::new(2, 4)).unwrap()
        );
    }
}
