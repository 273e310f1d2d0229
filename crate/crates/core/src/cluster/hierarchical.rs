use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::check_data;
use crate::error::{EdaError, Result};
use crate::linalg::{squared_distance, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Linkage {
    Single,
    Complete,
    Average,
}

impl FromStr for Linkage {
    type Err = EdaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "single" => Ok(Linkage::Single),
            "complete" => Ok(Linkage::Complete),
            "average" => Ok(Linkage::Average),
            other => Err(EdaError::invalid(format!("unknown linkage `{other}`"))),
        }
    }
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Linkage::Single => "single",
            Linkage::Complete => "complete",
            Linkage::Average => "average",
        })
    }
}

/// One agglomeration step. Points are clusters `0..n`; the cluster formed
/// by merge `s` gets id `n + s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub cluster_a: usize,
    pub cluster_b: usize,
    pub distance: f64,
    pub new_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub merges: Vec<Merge>,
    pub linkage: Linkage,
}

impl Dendrogram {
    pub fn n_points(&self) -> usize {
        self.merges.len() + 1
    }
}

/// Bottom-up clustering with Lance–Williams distance updates.
///
/// Among equally close pairs the one with the lowest `(a, b)` slot indices
/// merges first, where a slot is the smallest row index in a cluster.
pub fn agglomerative(data: &Matrix, linkage: Linkage) -> Result<Dendrogram> {
    check_data(data)?;
    let n = data.nrows();
    if n < 2 {
        return Err(EdaError::InsufficientData { needed: 2, got: n });
    }

    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = squared_distance(data.row(i), data.row(j)).sqrt();
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    let at = |i: usize, j: usize| i * n + j;

    let mut active = vec![true; n];
    let mut size = vec![1usize; n];
    let mut id: Vec<usize> = (0..n).collect();
    // nearest active neighbour with a higher slot index
    let mut nn = vec![usize::MAX; n];
    let scan = |i: usize, dist: &[f64], active: &[bool]| -> usize {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for j in (i + 1)..n {
            if active[j] && dist[at(i, j)] < best_d {
                best_d = dist[at(i, j)];
                best = j;
            }
        }
        best
    };
    for (i, slot) in nn.iter_mut().enumerate() {
        *slot = scan(i, &dist, &active);
    }

    let mut merges = Vec::with_capacity(n - 1);
    for step in 0..(n - 1) {
        let mut a = usize::MAX;
        let mut best = f64::INFINITY;
        for i in 0..n {
            if active[i] && nn[i] != usize::MAX && dist[at(i, nn[i])] < best {
                best = dist[at(i, nn[i])];
                a = i;
            }
        }
        let b = nn[a];

        let (sa, sb) = (size[a] as f64, size[b] as f64);
        for k in 0..n {
            if !active[k] || k == a || k == b {
                continue;
            }
            let (dak, dbk) = (dist[at(a, k)], dist[at(b, k)]);
            let d = match linkage {
                Linkage::Single => dak.min(dbk),
                Linkage::Complete => dak.max(dbk),
                Linkage::Average => (sa * dak + sb * dbk) / (sa + sb),
            };
            dist[at(a, k)] = d;
            dist[at(k, a)] = d;
        }

        let (ida, idb) = (id[a].min(id[b]), id[a].max(id[b]));
        merges.push(Merge {
            cluster_a: ida,
            cluster_b: idb,
            distance: best,
            new_size: size[a] + size[b],
        });
        active[b] = false;
        size[a] += size[b];
        id[a] = n + step;

        for p in 0..n {
            if !active[p] {
                continue;
            }
            if p == a || nn[p] == a || nn[p] == b {
                nn[p] = scan(p, &dist, &active);
            } else if p < a {
                let cur = nn[p];
                let d = dist[at(p, a)];
                if cur == usize::MAX || d < dist[at(p, cur)] || (d == dist[at(p, cur)] && a < cur)
                {
                    nn[p] = a;
                }
            }
        }
    }
    Ok(Dendrogram { merges, linkage })
}

/// Flat labels after the first `n - k` merges, numbered by first
/// appearance in row order.
pub fn cut(d: &Dendrogram, k: usize) -> Result<Vec<usize>> {
    let n = d.n_points();
    if k < 1 || k > n {
        return Err(EdaError::invalid(format!("k = {k} outside [1, {n}]")));
    }
    let mut parent: Vec<usize> = (0..(2 * n - 1)).collect();
    for (s, m) in d.merges.iter().take(n - k).enumerate() {
        parent[m.cluster_a] = n + s;
        parent[m.cluster_b] = n + s;
    }
    let root = |mut x: usize| {
        while parent[x] != x {
            x = parent[x];
        }
        x
    };
    let mut seen: Vec<usize> = Vec::new();
    Ok((0..n)
        .map(|i| {
            let r = root(i);
            match seen.iter().position(|&s| s == r) {
                Some(p) => p,
                None => {
                    seen.push(r);
                    seen.len() - 1
                }
            }
        })
        .collect())
}
