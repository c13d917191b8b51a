use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{argmax, Encoded, LearnError, Params};

/// One-vs-rest linear SVM trained by SGD on the L2-regularized hinge loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvm {
    weights: Vec<Vec<f64>>,
    bias: Vec<f64>,
}

impl LinearSvm {
    /// Step size `1 / (λ (t + t0))` with `t0 = 1 / (λ η0)`, so the first step is `η0`.
    pub(crate) fn fit(data: &Encoded, p: &mut Params, seed: u64) -> Result<Self, LearnError> {
        let lambda = p.float("lambda", 1e-4)?;
        let epochs = p.count("epochs", 200)?;
        let eta0 = p.float("eta0", 0.1)?;
        if lambda <= 0.0 || eta0 <= 0.0 {
            return Err(LearnError::BadHyperparameter {
                algorithm: super::Algorithm::Svm,
                message: "`lambda` and `eta0` must be positive".into(),
            });
        }
        let (c, d, n) = (data.n_classes(), data.x[0].len(), data.y.len());
        let t0 = 1.0 / (lambda * eta0);
        let mut weights = vec![vec![0.0; d]; c];
        let mut bias = vec![0.0; c];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        let mut t = 0.0;
        for _ in 0..epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                let eta = 1.0 / (lambda * (t + t0));
                t += 1.0;
                let x = &data.x[i];
                for class in 0..c {
                    let y = if data.y[i] == class { 1.0 } else { -1.0 };
                    let w = &mut weights[class];
                    let margin =
                        y * (w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + bias[class]);
                    let shrink = 1.0 - eta * lambda;
                    if margin < 1.0 {
                        for (wj, xj) in w.iter_mut().zip(x) {
                            *wj = *wj * shrink + eta * y * xj;
                        }
                        bias[class] += eta * y;
                    } else {
                        w.iter_mut().for_each(|wj| *wj *= shrink);
                    }
                }
            }
        }
        Ok(LinearSvm { weights, bias })
    }

    pub(crate) fn predict(&self, x: &[f64]) -> usize {
        let scores: Vec<f64> = self
            .weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| w.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + b)
            .collect();
        argmax(&scores)
    }
}
