use serde::{Deserialize, Serialize};

use super::{argmax, Encoded, LearnError, Params};

/// Multinomial logistic regression. Parameters are stored row-major per class,
/// `d` weights followed by the bias.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Softmax {
    n_classes: usize,
    params: Vec<f64>,
}

fn scores(params: &[f64], x: &[f64], n_classes: usize) -> Vec<f64> {
    let d = x.len();
    (0..n_classes)
        .map(|c| {
            let w = &params[c * (d + 1)..(c + 1) * (d + 1)];
            w[..d].iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + w[d]
        })
        .collect()
}

fn softmax_in_place(z: &mut [f64]) {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for v in z.iter_mut() {
        *v = (*v - max).exp();
        sum += *v;
    }
    z.iter_mut().for_each(|v| *v /= sum);
}

/// Mean cross-entropy plus `l2 / 2 · ‖W‖²` (biases unpenalized), and its gradient.
pub fn softmax_loss_and_gradient(
    params: &[f64],
    x: &[Vec<f64>],
    y: &[usize],
    n_classes: usize,
    l2: f64,
) -> (f64, Vec<f64>) {
    let d = x[0].len();
    let n = x.len() as f64;
    let mut grad = vec![0.0; params.len()];
    let mut loss = 0.0;
    for (row, &label) in x.iter().zip(y) {
        let mut p = scores(params, row, n_classes);
        let max = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let log_sum = p.iter().map(|v| (v - max).exp()).sum::<f64>().ln() + max;
        loss -= p[label] - log_sum;
        softmax_in_place(&mut p);
        for (c, pc) in p.iter().enumerate() {
            let err = pc - if c == label { 1.0 } else { 0.0 };
            let g = &mut grad[c * (d + 1)..(c + 1) * (d + 1)];
            for (gj, xj) in g[..d].iter_mut().zip(row) {
                *gj += err * xj;
            }
            g[d] += err;
        }
    }
    loss /= n;
    grad.iter_mut().for_each(|g| *g /= n);
    for c in 0..n_classes {
        for j in 0..d {
            let w = params[c * (d + 1) + j];
            loss += 0.5 * l2 * w * w;
            grad[c * (d + 1) + j] += l2 * w;
        }
    }
    (loss, grad)
}

/// Largest eigenvalue of `[X 1]ᵀ[X 1] / n` by power iteration.
fn gram_spectral_radius(x: &[Vec<f64>]) -> f64 {
    let d = x[0].len() + 1;
    let n = x.len() as f64;
    let mut v = vec![1.0 / (d as f64).sqrt(); d];
    let mut lambda = 0.0;
    for _ in 0..50 {
        let mut next = vec![0.0; d];
        for row in x {
            let xv: f64 = row.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() + v[d - 1];
            for (nj, xj) in next.iter_mut().zip(row) {
                *nj += xv * xj;
            }
            next[d - 1] += xv;
        }
        next.iter_mut().for_each(|a| *a /= n);
        let norm = next.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        lambda = norm;
        v = next.into_iter().map(|a| a / norm).collect();
    }
    lambda
}

impl Softmax {
    /// Full-batch gradient descent. Without an explicit `learning_rate` the
    /// step is `1 / L` for the loss's smoothness bound `L`.
    pub(crate) fn fit(data: &Encoded, p: &mut Params) -> Result<Self, LearnError> {
        let l2 = p.float("l2", 1e-4)?;
        let iterations = p.count("iterations", 500)?;
        let lr = p.float("learning_rate", 0.0)?;
        let (c, d) = (data.n_classes(), data.x[0].len());
        let step = if lr > 0.0 {
            lr
        } else {
            1.0 / (0.5 * gram_spectral_radius(&data.x) + l2).max(1e-12)
        };
        let mut params = vec![0.0; c * (d + 1)];
        for _ in 0..iterations {
            let (_, grad) = softmax_loss_and_gradient(&params, &data.x, &data.y, c, l2);
            for (w, g) in params.iter_mut().zip(&grad) {
                *w -= step * g;
            }
        }
        Ok(Softmax {
            n_classes: c,
            params,
        })
    }

    pub(crate) fn predict(&self, x: &[f64]) -> usize {
        argmax(&scores(&self.params, x, self.n_classes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_radius_of_identity_like_design() {
        // Rows ±e1, ±e2 → Gram diag(1/2, 1/2, 1) with the bias column.
        let x = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        assert!((gram_spectral_radius(&x) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_parameters_give_log_c_loss() {
        let x = vec![vec![1.0, 2.0], vec![0.5, -1.0]];
        let (loss, _) = softmax_loss_and_gradient(&[0.0; 9], &x, &[0, 2], 3, 0.0);
        assert!((loss - 3f64.ln()).abs() < 1e-12);
    }
}
