use rand::distributions::{Distribution, Uniform};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{argmax, Encoded, LearnError, Params};

/// One hidden ReLU layer and a softmax output, trained with Adam on mini-batches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    hidden: usize,
    /// `hidden × d`, row-major.
    w1: Vec<f64>,
    b1: Vec<f64>,
    /// `classes × hidden`, row-major.
    w2: Vec<f64>,
    b2: Vec<f64>,
}

struct Adam {
    m: Vec<f64>,
    v: Vec<f64>,
}

impl Adam {
    fn new(n: usize) -> Self {
        Adam {
            m: vec![0.0; n],
            v: vec![0.0; n],
        }
    }

    fn step(&mut self, params: &mut [f64], grad: &[f64], lr: f64, t: i32) {
        const B1: f64 = 0.9;
        const B2: f64 = 0.999;
        let (c1, c2) = (1.0 - B1.powi(t), 1.0 - B2.powi(t));
        for i in 0..params.len() {
            self.m[i] = B1 * self.m[i] + (1.0 - B1) * grad[i];
            self.v[i] = B2 * self.v[i] + (1.0 - B2) * grad[i] * grad[i];
            params[i] -= lr * (self.m[i] / c1) / ((self.v[i] / c2).sqrt() + 1e-8);
        }
    }
}

impl Mlp {
    fn hidden_layer(&self, x: &[f64]) -> Vec<f64> {
        let d = x.len();
        (0..self.hidden)
            .map(|h| {
                let z = self.w1[h * d..(h + 1) * d]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
                    + self.b1[h];
                z.max(0.0)
            })
            .collect()
    }

    fn output(&self, a: &[f64]) -> Vec<f64> {
        let h = self.hidden;
        self.b2
            .iter()
            .enumerate()
            .map(|(c, b)| {
                self.w2[c * h..(c + 1) * h]
                    .iter()
                    .zip(a)
                    .map(|(w, v)| w * v)
                    .sum::<f64>()
                    + b
            })
            .collect()
    }

    pub(crate) fn fit(data: &Encoded, p: &mut Params, seed: u64) -> Result<Self, LearnError> {
        let hidden = p.positive("hidden", 64)?;
        let epochs = p.count("epochs", 200)?;
        let lr = p.float("learning_rate", 1e-3)?;
        let batch = p.positive("batch_size", 32)?;
        let l2 = p.float("l2", 1e-4)?;
        let (c, d, n) = (data.n_classes(), data.x[0].len(), data.y.len());

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r1 = (6.0 / d as f64).sqrt();
        let r2 = (6.0 / hidden as f64).sqrt();
        let u1 = Uniform::new_inclusive(-r1, r1);
        let u2 = Uniform::new_inclusive(-r2, r2);
        let mut net = Mlp {
            hidden,
            w1: (0..hidden * d).map(|_| u1.sample(&mut rng)).collect(),
            b1: vec![0.0; hidden],
            w2: (0..c * hidden).map(|_| u2.sample(&mut rng) / 2.0).collect(),
            b2: vec![0.0; c],
        };
        let mut opt = [
            Adam::new(hidden * d),
            Adam::new(hidden),
            Adam::new(c * hidden),
            Adam::new(c),
        ];
        let mut order: Vec<usize> = (0..n).collect();
        let mut t = 0;
        for _ in 0..epochs {
            order.shuffle(&mut rng);
            for chunk in order.chunks(batch) {
                let mut g_w1 = vec![0.0; hidden * d];
                let mut g_b1 = vec![0.0; hidden];
                let mut g_w2 = vec![0.0; c * hidden];
                let mut g_b2 = vec![0.0; c];
                for &i in chunk {
                    let x = &data.x[i];
                    let a = net.hidden_layer(x);
                    let mut prob = net.output(&a);
                    let max = prob.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    prob.iter_mut().for_each(|v| *v = (*v - max).exp());
                    let sum: f64 = prob.iter().sum();
                    prob.iter_mut().for_each(|v| *v /= sum);
                    prob[data.y[i]] -= 1.0;
                    let mut back = vec![0.0; hidden];
                    for (k, &e) in prob.iter().enumerate() {
                        g_b2[k] += e;
                        for h in 0..hidden {
                            g_w2[k * hidden + h] += e * a[h];
                            back[h] += e * net.w2[k * hidden + h];
                        }
                    }
                    for h in 0..hidden {
                        if a[h] <= 0.0 {
                            continue;
                        }
                        g_b1[h] += back[h];
                        for (g, xv) in g_w1[h * d..(h + 1) * d].iter_mut().zip(x) {
                            *g += back[h] * xv;
                        }
                    }
                }
                let m = chunk.len() as f64;
                for (g, w) in g_w1.iter_mut().zip(&net.w1) {
                    *g = *g / m + l2 * w;
                }
                for (g, w) in g_w2.iter_mut().zip(&net.w2) {
                    *g = *g / m + l2 * w;
                }
                g_b1.iter_mut().chain(g_b2.iter_mut()).for_each(|g| *g /= m);
                t += 1;
                opt[0].step(&mut net.w1, &g_w1, lr, t);
                opt[1].step(&mut net.b1, &g_b1, lr, t);
                opt[2].step(&mut net.w2, &g_w2, lr, t);
                opt[3].step(&mut net.b2, &g_b2, lr, t);
            }
        }
        Ok(net)
    }

    pub(crate) fn predict(&self, x: &[f64]) -> usize {
        argmax(&self.output(&self.hidden_layer(x)))
    }
}
