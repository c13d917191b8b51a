use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    evaluate, stratified_split, train, Algorithm, ClassifierSpec, DatasetSplit, EvalReport,
    LearnError, Sample,
};
use crate::class::ComplexityClass;

/// Split protocol, seeds, and per-algorithm hyperparameters for a grid run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub split_ratio: f64,
    pub split_seed: u64,
    pub model_seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub hyperparameters: BTreeMap<Algorithm, BTreeMap<String, f64>>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            split_ratio: 0.8,
            split_seed: 42,
            model_seed: 42,
            algorithms: Algorithm::ALL.to_vec(),
            hyperparameters: BTreeMap::new(),
        }
    }
}

impl ExperimentConfig {
    pub fn spec(&self, algorithm: Algorithm) -> ClassifierSpec {
        ClassifierSpec {
            algorithm,
            hyperparameters: self
                .hyperparameters
                .get(&algorithm)
                .cloned()
                .unwrap_or_default(),
            seed: self.model_seed,
        }
    }

    pub fn split(&self, corpus: &[Sample]) -> Result<DatasetSplit, LearnError> {
        stratified_split(corpus, self.split_ratio, self.split_seed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub algorithm: Algorithm,
    pub report: EvalReport,
}

/// Trains and evaluates every configured algorithm on one split, in parallel.
pub fn run_grid(split: &DatasetSplit, cfg: &ExperimentConfig) -> Result<Vec<GridRow>, LearnError> {
    cfg.algorithms
        .par_iter()
        .map(|&algorithm| {
            let model = train(&cfg.spec(algorithm), &split.train)?;
            Ok(GridRow {
                algorithm,
                report: evaluate(&model, &split.test)?,
            })
        })
        .collect()
}

fn project(samples: &[Sample], column: usize) -> Vec<Sample> {
    samples
        .iter()
        .map(|s| Sample {
            id: s.id.clone(),
            features: vec![s.features[column]],
            label: s.label,
        })
        .collect()
}

/// Mean test accuracy over the configured algorithms when each column is
/// the only input, one entry per column, on a single fixed split.
pub fn per_feature_analysis(
    corpus: &[Sample],
    cfg: &ExperimentConfig,
) -> Result<Vec<f64>, LearnError> {
    let split = cfg.split(corpus)?;
    let d = split.train[0].features.len();
    (0..d)
        .into_par_iter()
        .map(|j| {
            let single = DatasetSplit {
                train: project(&split.train, j),
                test: project(&split.test, j),
                seed: split.seed,
                ratio: split.ratio,
            };
            let rows = run_grid(&single, cfg)?;
            Ok(rows.iter().map(|r| r.report.accuracy).sum::<f64>() / rows.len() as f64)
        })
        .collect()
}

/// Reruns the grid on the samples whose class is in `classes`.
pub fn class_subset_experiment(
    corpus: &[Sample],
    classes: &[ComplexityClass],
    cfg: &ExperimentConfig,
) -> Result<Vec<GridRow>, LearnError> {
    if classes.len() < 2 {
        let names: Vec<&str> = classes.iter().map(|c| c.as_str()).collect();
        return Err(LearnError::ClassTooSmall {
            class: names.join("+"),
            count: classes.len(),
            needed: 2,
        });
    }
    let subset: Vec<Sample> = corpus
        .iter()
        .filter(|s| classes.contains(&s.label))
        .cloned()
        .collect();
    run_grid(&cfg.split(&subset)?, cfg)
}
