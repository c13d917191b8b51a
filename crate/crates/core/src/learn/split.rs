use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{LearnError, Sample};
use crate::class::ComplexityClass;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSplit {
    pub train: Vec<Sample>,
    pub test: Vec<Sample>,
    pub seed: u64,
    pub ratio: f64,
}

/// Per-class shuffle and cut: each class sends `round(n * (1 - ratio))`
/// samples to test, clamped so both sides get at least one. Both halves keep
/// the corpus order.
pub fn stratified_split(
    corpus: &[Sample],
    ratio: f64,
    seed: u64,
) -> Result<DatasetSplit, LearnError> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(LearnError::InvalidRatio(ratio));
    }
    if corpus.is_empty() {
        return Err(LearnError::EmptyData);
    }
    let mut by_class: BTreeMap<ComplexityClass, Vec<usize>> = BTreeMap::new();
    for (i, s) in corpus.iter().enumerate() {
        by_class.entry(s.label).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_test = vec![false; corpus.len()];
    for (class, mut idx) in by_class {
        let n = idx.len();
        if n < 2 {
            return Err(LearnError::ClassTooSmall {
                class: class.to_string(),
                count: n,
                needed: 2,
            });
        }
        let n_test = ((n as f64 * (1.0 - ratio)).round() as usize).clamp(1, n - 1);
        idx.shuffle(&mut rng);
        for &i in &idx[..n_test] {
            in_test[i] = true;
        }
    }
    let (test, train): (Vec<_>, Vec<_>) = corpus.iter().zip(in_test).partition(|(_, t)| *t);
    Ok(DatasetSplit {
        train: train.into_iter().map(|(s, _)| s.clone()).collect(),
        test: test.into_iter().map(|(s, _)| s.clone()).collect(),
        seed,
        ratio,
    })
}
