use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::check_data;
use crate::error::{EdaError, Result};
use crate::linalg::{squared_distance, Matrix};

pub const NOISE: i64 = -1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DbscanResult {
    /// Cluster id per row, `-1` for noise.
    pub labels: Vec<i64>,
    pub eps: f64,
    pub min_pts: usize,
    pub n_clusters: usize,
    pub core: Vec<bool>,
}

/// Density-based clustering with closed `eps`-balls (self included in the
/// neighbour count).
///
/// Core points are grouped into clusters by connectivity, numbered in the
/// order their lowest-index core point is met scanning rows ascending. A
/// border point joins the cluster of its nearest core neighbour; equally
/// near cores are ranked by their coordinates, so the partition does not
/// depend on row order.
pub fn dbscan(data: &Matrix, eps: f64, min_pts: usize) -> Result<DbscanResult> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(EdaError::invalid("eps must be positive"));
    }
    if min_pts < 1 {
        return Err(EdaError::invalid("min_pts must be at least 1"));
    }
    check_data(data)?;
    let n = data.nrows();

    let neighbours: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter_map(|j| {
                    let d = squared_distance(data.row(i), data.row(j)).sqrt();
                    (d <= eps).then_some((j, d))
                })
                .collect()
        })
        .collect();
    let core: Vec<bool> = neighbours.iter().map(|nb| nb.len() >= min_pts).collect();

    let mut labels = vec![NOISE; n];
    let mut next_id = 0i64;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if !core[start] || labels[start] != NOISE {
            continue;
        }
        labels[start] = next_id;
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            for &(q, _) in &neighbours[p] {
                if core[q] && labels[q] == NOISE {
                    labels[q] = next_id;
                    queue.push_back(q);
                }
            }
        }
        next_id += 1;
    }

    let coord_cmp = |a: usize, b: usize| {
        data.row(a)
            .iter()
            .zip(data.row(b))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    };
    for i in 0..n {
        if core[i] {
            continue;
        }
        let nearest = neighbours[i]
            .iter()
            .filter(|(j, _)| core[*j])
            .min_by(|(a, da), (b, db)| da.total_cmp(db).then_with(|| coord_cmp(*a, *b)));
        if let Some(&(j, _)) = nearest {
            labels[i] = labels[j];
        }
    }

    Ok(DbscanResult {
        labels,
        eps,
        min_pts,
        n_clusters: next_id as usize,
        core,
    })
}
