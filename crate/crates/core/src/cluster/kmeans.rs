use serde::{Deserialize, Serialize};

use super::{check_data, distinct_rows, seeded_rng, uniform_index};
use crate::error::{EdaError, Result};
use crate::linalg::{squared_distance, Matrix};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KMeansParams {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub tol: f64,
}

impl KMeansParams {
    pub fn new(k: usize, seed: u64) -> Self {
        KMeansParams {
            k,
            seed,
            max_iter: 300,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeansResult {
    pub labels: Vec<usize>,
    pub centroids: Matrix,
    /// Within-cluster sum of squared distances.
    pub inertia: f64,
    pub iterations: usize,
    pub seed: u64,
    pub converged: bool,
    /// Inertia after every assignment step, ending with the final value.
    pub inertia_history: Vec<f64>,
}

/// Lloyd's algorithm with k-means++ seeding.
///
/// Iterates until an assignment step leaves every label unchanged, or the
/// largest centroid move drops below `tol` (followed by one consolidating
/// assignment and mean update), or `max_iter` updates have run. An empty
/// cluster is re-seeded with the point farthest from its own centroid.
pub fn kmeans(data: &Matrix, params: &KMeansParams) -> Result<KMeansResult> {
    check_data(data)?;
    let n = data.nrows();
    let k = params.k;
    if k < 1 || k > n {
        return Err(EdaError::invalid(format!("k = {k} outside [1, {n}]")));
    }
    if k > distinct_rows(data) {
        return Err(EdaError::invalid("k exceeds distinct points"));
    }

    let mut rng = seeded_rng(params.seed);
    let mut centroids = plus_plus_init(data, k, &mut rng);
    let (mut labels, first) = assign(data, &centroids);
    let mut history = vec![first];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < params.max_iter {
        iterations += 1;
        reseed_empty(data, &centroids, &mut labels, k);
        let updated = means(data, &labels, k);
        let shift = (0..k)
            .map(|c| squared_distance(centroids.row(c), updated.row(c)).sqrt())
            .fold(0.0, f64::max);
        centroids = updated;
        let (next, inertia) = assign(data, &centroids);
        history.push(inertia);
        let stable = next == labels;
        labels = next;
        if stable {
            converged = true;
            break;
        }
        if shift < params.tol {
            reseed_empty(data, &centroids, &mut labels, k);
            centroids = means(data, &labels, k);
            converged = true;
            break;
        }
    }

    let inertia = inertia_of(data, &labels, &centroids);
    history.push(inertia);
    Ok(KMeansResult {
        labels,
        centroids,
        inertia,
        iterations,
        seed: params.seed,
        converged,
        inertia_history: history,
    })
}

fn plus_plus_init(data: &Matrix, k: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Matrix {
    let n = data.nrows();
    let mut centroids = Matrix::zeros(k, data.ncols());
    let first = uniform_index(rng, n);
    centroids.row_mut(0).copy_from_slice(data.row(first));
    let mut nearest: Vec<f64> = data
        .rows()
        .map(|r| squared_distance(r, data.row(first)))
        .collect();
    for c in 1..k {
        let total: f64 = nearest.iter().sum();
        let target = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut pick = None;
        for (i, &w) in nearest.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            acc += w;
            pick = Some(i);
            if acc >= target {
                break;
            }
        }
        // total > 0 because k never exceeds the number of distinct points
        let pick = pick.expect("no candidate centroid");
        centroids.row_mut(c).copy_from_slice(data.row(pick));
        for (i, r) in data.rows().enumerate() {
            let d = squared_distance(r, data.row(pick));
            if d < nearest[i] {
                nearest[i] = d;
            }
        }
    }
    centroids
}

/// Nearest-centroid labels (lowest index on ties) and the resulting inertia.
fn assign(data: &Matrix, centroids: &Matrix) -> (Vec<usize>, f64) {
    let mut inertia = 0.0;
    let labels = data
        .rows()
        .map(|r| {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for c in 0..centroids.nrows() {
                let d = squared_distance(r, centroids.row(c));
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            inertia += best_d;
            best
        })
        .collect();
    (labels, inertia)
}

fn reseed_empty(data: &Matrix, centroids: &Matrix, labels: &mut [usize], k: usize) {
    let mut sizes = vec![0usize; k];
    for &l in labels.iter() {
        sizes[l] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let donor = (0..labels.len())
            .filter(|&i| sizes[labels[i]] > 1)
            .map(|i| (i, squared_distance(data.row(i), centroids.row(labels[i]))))
            .fold(None, |best: Option<(usize, f64)>, (i, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((i, d)),
            });
        if let Some((i, _)) = donor {
            sizes[labels[i]] -= 1;
            labels[i] = empty;
            sizes[empty] = 1;
        }
    }
}

fn means(data: &Matrix, labels: &[usize], k: usize) -> Matrix {
    let mut sums = Matrix::zeros(k, data.ncols());
    let mut counts = vec![0usize; k];
    for (r, &l) in data.rows().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums.row_mut(l).iter_mut().zip(r) {
            *s += v;
        }
    }
    for (c, &n) in counts.iter().enumerate() {
        if n > 0 {
            sums.row_mut(c).iter_mut().for_each(|s| *s /= n as f64);
        }
    }
    sums
}

pub(crate) fn inertia_of(data: &Matrix, labels: &[usize], centroids: &Matrix) -> f64 {
    data.rows()
        .zip(labels)
        .map(|(r, &l)| squared_distance(r, centroids.row(l)))
        .sum()
}
