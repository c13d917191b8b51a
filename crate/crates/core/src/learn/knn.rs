use serde::{Deserialize, Serialize};

use super::{majority, Encoded, LearnError, Params};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    k: usize,
    n_classes: usize,
    x: Vec<Vec<f64>>,
    y: Vec<usize>,
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Indices of the `k` training rows closest to `query` by Euclidean distance,
/// nearest first. Equal distances order by class index, then row index.
pub fn nearest_neighbors(x: &[Vec<f64>], y: &[usize], query: &[f64], k: usize) -> Vec<usize> {
    let mut scored: Vec<(f64, usize, usize)> = x
        .iter()
        .zip(y)
        .enumerate()
        .map(|(i, (row, &c))| (squared_distance(row, query), c, i))
        .collect();
    let key = |a: &(f64, usize, usize), b: &(f64, usize, usize)| {
        a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
    };
    let k = k.min(scored.len());
    if k < scored.len() {
        scored.select_nth_unstable_by(k, key);
        scored.truncate(k);
    }
    scored.sort_by(key);
    scored.into_iter().map(|(_, _, i)| i).collect()
}

impl Knn {
    pub(crate) fn fit(data: &Encoded, p: &mut Params) -> Result<Self, LearnError> {
        let k = p.positive("k", 5)?;
        Ok(Knn {
            k,
            n_classes: data.n_classes(),
            x: data.x.clone(),
            y: data.y.clone(),
        })
    }

    pub(crate) fn predict(&self, x: &[f64]) -> usize {
        let mut votes = vec![0usize; self.n_classes];
        for i in nearest_neighbors(&self.x, &self.y, x, self.k) {
            votes[self.y[i]] += 1;
        }
        majority(&votes)
    }
}
