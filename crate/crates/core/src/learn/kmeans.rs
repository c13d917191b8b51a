use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{majority, Encoded, LearnError, Params};

/// k-means clustering used as a classifier: each cluster predicts the most
/// common training class among its members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmeansClassifier {
    centroids: Vec<Vec<f64>>,
    cluster_class: Vec<usize>,
}

fn sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(centroids: &[Vec<f64>], x: &[f64]) -> (usize, f64) {
    centroids
        .iter()
        .enumerate()
        .map(|(i, c)| (i, sq(c, x)))
        .fold(
            (0, f64::INFINITY),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        )
}

fn plus_plus(x: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut centroids = vec![x[rng.gen_range(0..x.len())].clone()];
    let mut dist: Vec<f64> = x.iter().map(|p| sq(p, &centroids[0])).collect();
    while centroids.len() < k {
        let next = match WeightedIndex::new(&dist) {
            Ok(w) => w.sample(rng),
            // Every point already coincides with a centroid.
            Err(_) => rng.gen_range(0..x.len()),
        };
        centroids.push(x[next].clone());
        for (d, p) in dist.iter_mut().zip(x) {
            *d = d.min(sq(p, &centroids[centroids.len() - 1]));
        }
    }
    centroids
}

/// Lloyd iterations from a k-means++ start; returns centroids and inertia.
fn lloyd(x: &[Vec<f64>], k: usize, max_iter: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, f64) {
    let d = x[0].len();
    let mut centroids = plus_plus(x, k, rng);
    let mut assign = vec![usize::MAX; x.len()];
    for _ in 0..max_iter {
        let mut changed = false;
        for (a, p) in assign.iter_mut().zip(x) {
            let (c, _) = nearest(&centroids, p);
            changed |= *a != c;
            *a = c;
        }
        if !changed {
            break;
        }
        let mut sums = vec![vec![0.0; d]; k];
        let mut counts = vec![0usize; k];
        for (&a, p) in assign.iter().zip(x) {
            counts[a] += 1;
            for (s, v) in sums[a].iter_mut().zip(p) {
                *s += v;
            }
        }
        for ((c, s), &n) in centroids.iter_mut().zip(sums).zip(&counts) {
            if n > 0 {
                *c = s.into_iter().map(|v| v / n as f64).collect();
            }
        }
    }
    let inertia = x.iter().map(|p| nearest(&centroids, p).1).sum();
    (centroids, inertia)
}

impl KmeansClassifier {
    pub(crate) fn fit(data: &Encoded, p: &mut Params, seed: u64) -> Result<Self, LearnError> {
        let k = p.positive("k", 5)?.min(data.x.len());
        let n_init = p.positive("n_init", 10)?;
        let max_iter = p.positive("max_iter", 300)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: Option<(Vec<Vec<f64>>, f64)> = None;
        for _ in 0..n_init {
            let run = lloyd(&data.x, k, max_iter, &mut rng);
            if best.as_ref().is_none_or(|b| run.1 < b.1) {
                best = Some(run);
            }
        }
        let centroids = best.unwrap().0;
        let mut votes = vec![vec![0usize; data.n_classes()]; k];
        let mut overall = vec![0usize; data.n_classes()];
        for (p, &y) in data.x.iter().zip(&data.y) {
            votes[nearest(&centroids, p).0][y] += 1;
            overall[y] += 1;
        }
        let fallback = majority(&overall);
        let cluster_class = votes
            .iter()
            .map(|v| {
                if v.iter().all(|&c| c == 0) {
                    fallback
                } else {
                    majority(v)
                }
            })
            .collect();
        Ok(KmeansClassifier {
            centroids,
            cluster_class,
        })
    }

    pub(crate) fn predict(&self, x: &[f64]) -> usize {
        self.cluster_class[nearest(&self.centroids, x).0]
    }
}
