use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{argmax, Encoded, LearnError, Params};

/// Gaussian naive Bayes with a floor on every per-class variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    log_prior: Vec<f64>,
    mean: Vec<Vec<f64>>,
    var: Vec<Vec<f64>>,
}

impl GaussianNb {
    pub(crate) fn fit(data: &Encoded, p: &mut Params) -> Result<Self, LearnError> {
        let floor = p.float("var_floor", 1e-9)?;
        let (c, d) = (data.n_classes(), data.x[0].len());
        let mut count = vec![0usize; c];
        let mut mean = vec![vec![0.0; d]; c];
        for (row, &y) in data.x.iter().zip(&data.y) {
            count[y] += 1;
            for (m, v) in mean[y].iter_mut().zip(row) {
                *m += v;
            }
        }
        for (m, &n) in mean.iter_mut().zip(&count) {
            m.iter_mut().for_each(|v| *v /= n as f64);
        }
        let mut var = vec![vec![0.0; d]; c];
        for (row, &y) in data.x.iter().zip(&data.y) {
            for ((s, v), m) in var[y].iter_mut().zip(row).zip(&mean[y]) {
                *s += (v - m).powi(2);
            }
        }
        for (s, &n) in var.iter_mut().zip(&count) {
            s.iter_mut().for_each(|v| *v = (*v / n as f64).max(floor));
        }
        let n = data.y.len() as f64;
        let log_prior = count.iter().map(|&k| (k as f64 / n).ln()).collect();
        Ok(GaussianNb {
            log_prior,
            mean,
            var,
        })
    }

    pub(crate) fn predict(&self, x: &[f64]) -> usize {
        let scores: Vec<f64> = (0..self.log_prior.len())
            .map(|c| {
                self.log_prior[c]
                    + x.iter()
                        .zip(&self.mean[c])
                        .zip(&self.var[c])
                        .map(|((v, m), s)| -0.5 * (2.0 * PI * s).ln() - (v - m).powi(2) / (2.0 * s))
                        .sum::<f64>()
            })
            .collect();
        argmax(&scores)
    }
}
