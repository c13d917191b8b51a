use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{majority, Encoded, LearnError, Params};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum Node {
    Leaf {
        class: usize,
    },
    /// `x[feature] <= threshold` goes left.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, Copy)]
struct Growth {
    max_depth: Option<usize>,
    min_samples_split: usize,
    /// Features examined per split; `None` examines all.
    max_features: Option<usize>,
}

/// CART classification tree grown on Gini impurity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    nodes: Vec<Node>,
}

struct Builder<'a> {
    x: &'a [Vec<f64>],
    y: &'a [usize],
    n_classes: usize,
    growth: Growth,
    rng: ChaCha8Rng,
    nodes: Vec<Node>,
}

/// Sum over both sides of `n · gini`, which orders splits like weighted Gini.
fn split_cost(left: &[usize], nl: usize, right: &[usize], nr: usize) -> f64 {
    let side = |counts: &[usize], n: usize| {
        if n == 0 {
            0.0
        } else {
            n as f64 - counts.iter().map(|&c| (c * c) as f64).sum::<f64>() / n as f64
        }
    };
    side(left, nl) + side(right, nr)
}

impl Builder<'_> {
    fn grow(&mut self, idx: &mut [usize], depth: usize) -> usize {
        let mut counts = vec![0usize; self.n_classes];
        for &i in idx.iter() {
            counts[self.y[i]] += 1;
        }
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let at_limit = self.growth.max_depth.is_some_and(|m| depth >= m);
        let split = if pure || at_limit || idx.len() < self.growth.min_samples_split {
            None
        } else {
            self.best_split(idx)
        };
        let id = self.nodes.len();
        let Some((feature, threshold)) = split else {
            self.nodes.push(Node::Leaf {
                class: majority(&counts),
            });
            return id;
        };
        self.nodes.push(Node::Leaf { class: 0 });
        let mut cut = 0;
        for k in 0..idx.len() {
            if self.x[idx[k]][feature] <= threshold {
                idx.swap(k, cut);
                cut += 1;
            }
        }
        let (l, r) = idx.split_at_mut(cut);
        l.sort_unstable();
        r.sort_unstable();
        let left = self.grow(l, depth + 1);
        let right = self.grow(r, depth + 1);
        self.nodes[id] = Node::Split {
            feature,
            threshold,
            left,
            right,
        };
        id
    }

    /// Lowest-cost split; ties go to the lower feature index, then the lower
    /// threshold. With `max_features`, features are visited in random order
    /// until that many have been examined and a valid split exists.
    fn best_split(&mut self, idx: &[usize]) -> Option<(usize, f64)> {
        let d = self.x[0].len();
        let mut order: Vec<usize> = (0..d).collect();
        if self.growth.max_features.is_some_and(|m| m < d) {
            order.shuffle(&mut self.rng);
        }
        let budget = self.growth.max_features.unwrap_or(d);
        let mut best: Option<(f64, usize, f64)> = None;
        let mut pairs: Vec<(f64, usize)> = Vec::with_capacity(idx.len());
        let mut total = vec![0usize; self.n_classes];
        for &i in idx {
            total[self.y[i]] += 1;
        }
        for (visited, &f) in order.iter().enumerate() {
            if visited >= budget && best.is_some() {
                break;
            }
            pairs.clear();
            pairs.extend(idx.iter().map(|&i| (self.x[i][f], self.y[i])));
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut left = vec![0usize; self.n_classes];
            let mut right = total.clone();
            for k in 0..pairs.len() - 1 {
                left[pairs[k].1] += 1;
                right[pairs[k].1] -= 1;
                let (lo, hi) = (pairs[k].0, pairs[k + 1].0);
                if lo == hi {
                    continue;
                }
                let cost = split_cost(&left, k + 1, &right, pairs.len() - k - 1);
                let mut threshold = lo + (hi - lo) / 2.0;
                if threshold >= hi {
                    threshold = lo;
                }
                let better = match best {
                    None => true,
                    Some((c, bf, _)) => cost < c || (cost == c && f < bf),
                };
                if better {
                    best = Some((cost, f, threshold));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }
}

impl Tree {
    fn grow(
        x: &[Vec<f64>],
        y: &[usize],
        n_classes: usize,
        mut idx: Vec<usize>,
        growth: Growth,
        rng: ChaCha8Rng,
    ) -> Tree {
        let mut b = Builder {
            x,
            y,
            n_classes,
            growth,
            rng,
            nodes: Vec::new(),
        };
        b.grow(&mut idx, 0);
        Tree { nodes: b.nodes }
    }

    pub(crate) fn fit_spec(data: &Encoded, p: &mut Params, seed: u64) -> Result<Self, LearnError> {
        let growth = Growth {
            max_depth: Some(p.count("max_depth", 0)?).filter(|&m| m > 0),
            min_samples_split: p.count("min_samples_split", 2)?.max(2),
            max_features: None,
        };
        let idx = (0..data.y.len()).collect();
        Ok(Tree::grow(
            &data.x,
            &data.y,
            data.n_classes(),
            idx,
            growth,
            ChaCha8Rng::seed_from_u64(seed),
        ))
    }

    pub(crate) fn predict(&self, x: &[f64]) -> usize {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf { class } => return class,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    #[cfg(test)]
    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Bagged CART trees with per-split feature subsampling and majority vote.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    n_classes: usize,
    trees: Vec<Tree>,
}

impl Forest {
    /// Tree `t` draws from its own ChaCha stream `t` of `seed`, so the result
    /// does not depend on thread scheduling.
    pub(crate) fn fit(data: &Encoded, p: &mut Params, seed: u64) -> Result<Self, LearnError> {
        let n_trees = p.positive("trees", 100)?;
        let d = data.x[0].len();
        let default_features = ((d as f64).sqrt() as usize).max(1);
        let growth = Growth {
            max_depth: Some(p.count("max_depth", 0)?).filter(|&m| m > 0),
            min_samples_split: p.count("min_samples_split", 2)?.max(2),
            max_features: Some(p.positive("max_features", default_features)?.min(d)),
        };
        let n = data.y.len();
        let trees = (0..n_trees as u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t);
                let mut idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
                idx.sort_unstable();
                Tree::grow(&data.x, &data.y, data.n_classes(), idx, growth, rng)
            })
            .collect();
        Ok(Forest {
            n_classes: data.n_classes(),
            trees,
        })
    }

    pub(crate) fn predict(&self, x: &[f64]) -> usize {
        let mut votes = vec![0usize; self.n_classes];
        for t in &self.trees {
            votes[t.predict(x)] += 1;
        }
        majority(&votes)
    }
}
