use rand::distributions::{Distribution, Uniform, WeightedIndex};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::wl::SubgraphVocabulary;
use super::{EmbedError, EmbeddingConfig};

/// Number of fixed negative draws used to estimate the objective's noise.
const OBJECTIVE_DRAWS: u64 = 5;
const MIN_LR_FRACTION: f32 = 1e-4;

/// Surrogate log-likelihood after one epoch (epoch 0 is the initialization).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ObjectivePoint {
    pub epoch: usize,
    pub mean: f64,
    pub std: f64,
}

/// Graph and subgraph vectors learned by skipgram with negative sampling.
#[derive(Debug, Clone)]
pub struct EmbeddingModel {
    pub config: EmbeddingConfig,
    pub vocabulary: SubgraphVocabulary,
    graph_vectors: Vec<f32>,
    subgraph_vectors: Vec<f32>,
    pub objective: Vec<ObjectivePoint>,
}

impl EmbeddingModel {
    pub fn dimension(&self) -> usize {
        self.config.dimension
    }

    pub fn graph_count(&self) -> usize {
        self.graph_vectors.len() / self.config.dimension
    }

    pub fn graph_vector(&self, graph: usize) -> &[f32] {
        let d = self.config.dimension;
        &self.graph_vectors[graph * d..(graph + 1) * d]
    }

    pub fn subgraph_vector(&self, id: u32) -> &[f32] {
        let d = self.config.dimension;
        let i = id as usize;
        &self.subgraph_vectors[i * d..(i + 1) * d]
    }

    pub fn graph_vectors(&self) -> impl Iterator<Item = &[f32]> {
        self.graph_vectors.chunks_exact(self.config.dimension)
    }
}

fn dot(a: &[f32], b: &[f32]) -> f32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sigmoid(x: f32) -> f32 {
    1.0 / (1.0 + (-x).exp())
}

/// `ln σ(x)`, stable for large |x|.
fn ln_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        -(-x).exp().ln_1p()
    } else {
        x - x.exp().ln_1p()
    }
}

pub fn cosine(a: &[f32], b: &[f32]) -> f64 {
    let (mut ab, mut aa, mut bb) = (0.0f64, 0.0f64, 0.0f64);
    for (&x, &y) in a.iter().zip(b) {
        ab += f64::from(x) * f64::from(y);
        aa += f64::from(x) * f64::from(x);
        bb += f64::from(y) * f64::from(y);
    }
    if aa == 0.0 || bb == 0.0 {
        0.0
    } else {
        ab / (aa.sqrt() * bb.sqrt())
    }
}

struct Objective {
    pairs: Vec<(u32, u32)>,
    negatives: Vec<Vec<u32>>,
    k: usize,
}

impl Objective {
    fn new(all: &[(u32, u32)], noise: &WeightedIndex<f64>, cfg: &EmbeddingConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6f62_6a65_6374_6976);
        let pairs: Vec<(u32, u32)> = if all.len() <= cfg.objective_sample {
            all.to_vec()
        } else {
            all.choose_multiple(&mut rng, cfg.objective_sample)
                .copied()
                .collect()
        };
        let k = cfg.negative_samples;
        let negatives = (0..OBJECTIVE_DRAWS)
            .map(|_| {
                (0..pairs.len() * k)
                    .map(|_| noise.sample(&mut rng) as u32)
                    .collect()
            })
            .collect();
        Objective {
            pairs,
            negatives,
            k,
        }
    }

    fn measure(&self, epoch: usize, g: &[f32], s: &[f32], d: usize) -> ObjectivePoint {
        let draws: Vec<f64> = self
            .negatives
            .iter()
            .map(|negs| {
                let mut total = 0.0;
                for (i, &(gi, si)) in self.pairs.iter().enumerate() {
                    let gv = &g[gi as usize * d..(gi as usize + 1) * d];
                    total += ln_sigmoid(f64::from(dot(
                        gv,
                        &s[si as usize * d..(si as usize + 1) * d],
                    )));
                    for &n in &negs[i * self.k..(i + 1) * self.k] {
                        total += ln_sigmoid(-f64::from(dot(
                            gv,
                            &s[n as usize * d..(n as usize + 1) * d],
                        )));
                    }
                }
                total / self.pairs.len() as f64
            })
            .collect();
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / draws.len() as f64;
        ObjectivePoint {
            epoch,
            mean,
            std: var.sqrt(),
        }
    }
}

/// Trains graph vectors against the vocabulary's per-graph contexts.
///
/// Every (graph, subgraph occurrence) pair gets one positive update and
/// `negative_samples` updates against subgraphs drawn from the unigram
/// distribution raised to 3/4. The learning rate decays linearly to near zero
/// over all epochs. Single-threaded: a fixed seed gives identical vectors.
pub fn train_on_vocabulary(
    vocabulary: SubgraphVocabulary,
    cfg: &EmbeddingConfig,
) -> Result<EmbeddingModel, EmbedError> {
    cfg.validate()?;
    if vocabulary.is_empty() {
        return Err(EmbedError::EmptyVocabulary);
    }
    let d = cfg.dimension;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bound = 0.5 / d as f32;
    let init = Uniform::new_inclusive(-bound, bound);
    let n_graphs = vocabulary.contexts().len();
    let mut g: Vec<f32> = (0..n_graphs * d).map(|_| init.sample(&mut rng)).collect();
    let mut s: Vec<f32> = (0..vocabulary.len() * d)
        .map(|_| init.sample(&mut rng))
        .collect();

    let noise = WeightedIndex::new(vocabulary.counts().iter().map(|&c| (c as f64).powf(0.75)))
        .map_err(|_| EmbedError::EmptyVocabulary)?;
    let mut pairs: Vec<(u32, u32)> = vocabulary
        .contexts()
        .iter()
        .enumerate()
        .flat_map(|(gi, ctx)| ctx.iter().map(move |&si| (gi as u32, si)))
        .collect();

    let objective = (cfg.objective_sample > 0 && !pairs.is_empty())
        .then(|| Objective::new(&pairs, &noise, cfg));
    let mut history = Vec::new();
    if let Some(obj) = &objective {
        history.push(obj.measure(0, &g, &s, d));
    }

    let total_steps = (cfg.epochs * pairs.len()).max(1) as f32;
    let lr0 = cfg.learning_rate as f32;
    let mut step = 0usize;
    let mut grad = vec![0.0f32; d];
    for epoch in 1..=cfg.epochs {
        pairs.shuffle(&mut rng);
        for &(gi, si) in &pairs {
            let lr = lr0 * (1.0 - step as f32 / total_steps).max(MIN_LR_FRACTION);
            step += 1;
            let gv = &mut g[gi as usize * d..(gi as usize + 1) * d];
            grad.iter_mut().for_each(|x| *x = 0.0);
            for k in 0..=cfg.negative_samples {
                let (target, label) = if k == 0 {
                    (si, 1.0)
                } else {
                    let n = noise.sample(&mut rng) as u32;
                    if n == si {
                        continue;
                    }
                    (n, 0.0)
                };
                let sv = &mut s[target as usize * d..(target as usize + 1) * d];
                let coef = (label - sigmoid(dot(gv, sv))) * lr;
                for ((acc, sx), &gx) in grad.iter_mut().zip(sv.iter_mut()).zip(gv.iter()) {
                    *acc += coef * *sx;
                    *sx += coef * gx;
                }
            }
            for (gx, acc) in gv.iter_mut().zip(&grad) {
                *gx += acc;
            }
        }
        if let Some(obj) = &objective {
            let point = obj.measure(epoch, &g, &s, d);
            log::debug!(
                "epoch {epoch}: objective {:.5} ± {:.5}",
                point.mean,
                point.std
            );
            history.push(point);
        }
    }

    Ok(EmbeddingModel {
        config: cfg.clone(),
        vocabulary,
        graph_vectors: g,
        subgraph_vectors: s,
        objective: history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_sigmoid_is_stable() {
        assert!((ln_sigmoid(0.0) - 0.5f64.ln()).abs() < 1e-12);
        assert!(ln_sigmoid(800.0).abs() < 1e-300);
        assert!((ln_sigmoid(-800.0) + 800.0).abs() < 1e-9);
    }

    #[test]
    fn cosine_basics() {
        assert!((cosine(&[1.0, 0.0], &[2.0, 0.0]) - 1.0).abs() < 1e-12);
        assert!(cosine(&[1.0, 0.0], &[0.0, 3.0]).abs() < 1e-12);
        assert_eq!(cosine(&[0.0, 0.0], &[1.0, 1.0]), 0.0);
    }
}
