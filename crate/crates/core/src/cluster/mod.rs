//! Clustering: k-means, agglomerative hierarchical, DBSCAN and Gaussian
//! mixtures. Distances are Euclidean throughout.
//!
//! Seeded procedures use ChaCha8 (`rand_chacha`), whose output stream is
//! specified independently of platform word size, and draw integers only
//! through `u64` ranges so a seed reproduces everywhere.

mod dbscan;
mod gmm;
mod hierarchical;
mod kmeans;

pub use dbscan::{dbscan, DbscanResult};
pub use gmm::{gmm, gmm_predict, CovarianceType, GmmModel, GmmParams};
pub use hierarchical::{agglomerative, cut, Dendrogram, Linkage, Merge};
pub use kmeans::{kmeans, KMeansParams, KMeansResult};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EdaError, Result};
use crate::linalg::Matrix;

pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform index in `0..n` through a `u64` range.
pub(crate) fn uniform_index(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}

pub(crate) fn check_data(data: &Matrix) -> Result<()> {
    if data.nrows() == 0 {
        return Err(EdaError::InsufficientData { needed: 1, got: 0 });
    }
    if !data.is_finite() {
        return Err(EdaError::invalid("clustering input has missing or non-finite cells"));
    }
    Ok(())
}

/// Number of distinct rows.
pub(crate) fn distinct_rows(data: &Matrix) -> usize {
    let mut rows: Vec<&[f64]> = data.rows().collect();
    let cmp = |a: &&[f64], b: &&[f64]| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    };
    rows.sort_by(cmp);
    rows.dedup_by(|a, b| cmp(a, b).is_eq());
    rows.len()
}
