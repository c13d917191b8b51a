//! Classifiers, evaluation, and the experiment grids over features or embeddings.

mod experiments;
mod kmeans;
mod knn;
mod logistic;
mod metrics;
mod mlp;
mod model_io;
mod naive_bayes;
mod split;
mod standardize;
mod svm;
mod tree;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::class::ComplexityClass;

pub use experiments::{
    class_subset_experiment, per_feature_analysis, run_grid, ExperimentConfig, GridRow,
};
pub use knn::nearest_neighbors;
pub use logistic::softmax_loss_and_gradient;
pub use metrics::{evaluate, ClassMetrics, EvalReport};
pub use model_io::{load_model, save_model, ModelIoError};
pub use split::{stratified_split, DatasetSplit};
pub use standardize::Standardizer;

/// One labeled vector (feature vector or embedding).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub id: String,
    pub features: Vec<f64>,
    pub label: ComplexityClass,
}

impl Sample {
    pub fn new(id: impl Into<String>, features: Vec<f64>, label: ComplexityClass) -> Self {
        Sample {
            id: id.into(),
            features,
            label,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LearnError {
    #[error("class `{class}` has {count} samples, need at least {needed}")]
    ClassTooSmall {
        class: String,
        count: usize,
        needed: usize,
    },
    #[error("expected vectors of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate training data: {0}")]
    DegenerateData(String),
    #[error("no samples")]
    EmptyData,
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("bad hyperparameter for {algorithm}: {message}")]
    BadHyperparameter {
        algorithm: Algorithm,
        message: String,
    },
    #[error("split ratio {0} is outside (0, 1)")]
    InvalidRatio(f64),
}

/// The eight classifiers, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Kmeans,
    RandomForest,
    NaiveBayes,
    Knn,
    LogisticRegression,
    DecisionTree,
    Mlp,
    Svm,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Kmeans,
        Algorithm::RandomForest,
        Algorithm::NaiveBayes,
        Algorithm::Knn,
        Algorithm::LogisticRegression,
        Algorithm::DecisionTree,
        Algorithm::Mlp,
        Algorithm::Svm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Kmeans => "kmeans",
            Algorithm::RandomForest => "random_forest",
            Algorithm::NaiveBayes => "naive_bayes",
            Algorithm::Knn => "knn",
            Algorithm::LogisticRegression => "logistic_regression",
            Algorithm::DecisionTree => "decision_tree",
            Algorithm::Mlp => "mlp",
            Algorithm::Svm => "svm",
        }
    }

    /// Row name used in the report tables.
    pub fn title(self) -> &'static str {
        match self {
            Algorithm::Kmeans => "K-means",
            Algorithm::RandomForest => "Random forest",
            Algorithm::NaiveBayes => "Naive Bayes",
            Algorithm::Knn => "k-Nearest",
            Algorithm::LogisticRegression => "Logistic Regression",
            Algorithm::DecisionTree => "Decision Tree",
            Algorithm::Mlp => "MLP Classifier",
            Algorithm::Svm => "SVM",
        }
    }

    pub(crate) fn tag(self) -> u8 {
        Algorithm::ALL.iter().position(|a| *a == self).unwrap() as u8
    }

    pub(crate) fn from_tag(tag: u8) -> Option<Algorithm> {
        Algorithm::ALL.get(tag as usize).copied()
    }

    fn standardizes(self) -> bool {
        matches!(
            self,
            Algorithm::Knn
                | Algorithm::LogisticRegression
                | Algorithm::Svm
                | Algorithm::Mlp
                | Algorithm::Kmeans
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = LearnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| LearnError::UnknownAlgorithm(s.to_string()))
    }
}

/// Algorithm choice, hyperparameter overrides, and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierSpec {
    pub algorithm: Algorithm,
    #[serde(default)]
    pub hyperparameters: BTreeMap<String, f64>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_seed() -> u64 {
    42
}

impl ClassifierSpec {
    pub fn new(algorithm: Algorithm) -> Self {
        ClassifierSpec {
            algorithm,
            hyperparameters: BTreeMap::new(),
            seed: default_seed(),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.hyperparameters.insert(key.to_string(), value);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Reads hyperparameters with defaults and rejects keys the algorithm does not know.
pub(crate) struct Params<'a> {
    algorithm: Algorithm,
    map: &'a BTreeMap<String, f64>,
    known: Vec<&'static str>,
}

impl<'a> Params<'a> {
    fn new(spec: &'a ClassifierSpec) -> Self {
        Params {
            algorithm: spec.algorithm,
            map: &spec.hyperparameters,
            known: Vec::new(),
        }
    }

    pub(crate) fn float(&mut self, key: &'static str, default: f64) -> Result<f64, LearnError> {
        self.known.push(key);
        let v = self.map.get(key).copied().unwrap_or(default);
        if !v.is_finite() || v < 0.0 {
            return Err(self.bad(format!("`{key}` must be a non-negative number, got {v}")));
        }
        Ok(v)
    }

    pub(crate) fn count(&mut self, key: &'static str, default: usize) -> Result<usize, LearnError> {
        let v = self.float(key, default as f64)?;
        if v.fract() != 0.0 {
            return Err(self.bad(format!("`{key}` must be a whole number, got {v}")));
        }
        Ok(v as usize)
    }

    pub(crate) fn positive(
        &mut self,
        key: &'static str,
        default: usize,
    ) -> Result<usize, LearnError> {
        let v = self.count(key, default)?;
        if v == 0 {
            return Err(self.bad(format!("`{key}` must be at least 1")));
        }
        Ok(v)
    }

    fn finish(self) -> Result<(), LearnError> {
        match self.map.keys().find(|k| !self.known.contains(&k.as_str())) {
            Some(k) => Err(self.bad(format!("unknown hyperparameter `{k}`"))),
            None => Ok(()),
        }
    }

    fn bad(&self, message: String) -> LearnError {
        LearnError::BadHyperparameter {
            algorithm: self.algorithm,
            message,
        }
    }
}

/// Training rows as class indices into `classes`.
pub(crate) struct Encoded {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<usize>,
    pub classes: Vec<ComplexityClass>,
}

impl Encoded {
    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) enum Inner {
    Knn(knn::Knn),
    NaiveBayes(naive_bayes::GaussianNb),
    Logistic(logistic::Softmax),
    Tree(tree::Tree),
    Forest(tree::Forest),
    Svm(svm::LinearSvm),
    Kmeans(kmeans::KmeansClassifier),
    Mlp(mlp::Mlp),
}

/// A fitted classifier. Immutable; prediction is safe to share across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub algorithm: Algorithm,
    pub dimension: usize,
    pub classes: Vec<ComplexityClass>,
    pub standardizer: Option<Standardizer>,
    pub(crate) inner: Inner,
}

impl TrainedModel {
    pub fn predict(&self, features: &[f64]) -> Result<ComplexityClass, LearnError> {
        if features.len() != self.dimension {
            return Err(LearnError::DimensionMismatch {
                expected: self.dimension,
                found: features.len(),
            });
        }
        let scaled;
        let x = match &self.standardizer {
            Some(s) => {
                scaled = s.transform(features);
                &scaled
            }
            None => features,
        };
        let idx = match &self.inner {
            Inner::Knn(m) => m.predict(x),
            Inner::NaiveBayes(m) => m.predict(x),
            Inner::Logistic(m) => m.predict(x),
            Inner::Tree(m) => m.predict(x),
            Inner::Forest(m) => m.predict(x),
            Inner::Svm(m) => m.predict(x),
            Inner::Kmeans(m) => m.predict(x),
            Inner::Mlp(m) => m.predict(x),
        };
        Ok(self.classes[idx])
    }

    pub fn predict_all(&self, samples: &[Sample]) -> Result<Vec<ComplexityClass>, LearnError> {
        samples.iter().map(|s| self.predict(&s.features)).collect()
    }
}

/// Index of the largest value; the first one wins ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Index of the most frequent class; the lowest index wins ties.
pub(crate) fn majority(counts: &[usize]) -> usize {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

fn encode(data: &[Sample]) -> Result<Encoded, LearnError> {
    let first = data.first().ok_or(LearnError::EmptyData)?;
    let dim = first.features.len();
    if let Some(bad) = data.iter().find(|s| s.features.len() != dim) {
        return Err(LearnError::DimensionMismatch {
            expected: dim,
            found: bad.features.len(),
        });
    }
    let mut classes: Vec<ComplexityClass> = data.iter().map(|s| s.label).collect();
    classes.sort();
    classes.dedup();
    if classes.len() < 2 {
        return Err(LearnError::DegenerateData(format!(
            "only class `{}` in training data",
            classes[0]
        )));
    }
    let y = data
        .iter()
        .map(|s| classes.binary_search(&s.label).unwrap())
        .collect();
    Ok(Encoded {
        x: data.iter().map(|s| s.features.clone()).collect(),
        y,
        classes,
    })
}

pub fn train(spec: &ClassifierSpec, data: &[Sample]) -> Result<TrainedModel, LearnError> {
    let mut enc = encode(data)?;
    let dimension = enc.x[0].len();
    let standardizer = spec.algorithm.standardizes().then(|| {
        let s = Standardizer::fit(&enc.x);
        enc.x = enc.x.iter().map(|row| s.transform(row)).collect();
        s
    });
    let mut p = Params::new(spec);
    let inner = match spec.algorithm {
        Algorithm::Knn => Inner::Knn(knn::Knn::fit(&enc, &mut p)?),
        Algorithm::NaiveBayes => Inner::NaiveBayes(naive_bayes::GaussianNb::fit(&enc, &mut p)?),
        Algorithm::LogisticRegression => Inner::Logistic(logistic::Softmax::fit(&enc, &mut p)?),
        Algorithm::DecisionTree => Inner::Tree(tree::Tree::fit_spec(&enc, &mut p, spec.seed)?),
        Algorithm::RandomForest => Inner::Forest(tree::Forest::fit(&enc, &mut p, spec.seed)?),
        Algorithm::Svm => Inner::Svm(svm::LinearSvm::fit(&enc, &mut p, spec.seed)?),
        Algorithm::Kmeans => Inner::Kmeans(kmeans::KmeansClassifier::fit(&enc, &mut p, spec.seed)?),
        Algorithm::Mlp => Inner::Mlp(mlp::Mlp::fit(&enc, &mut p, spec.seed)?),
    };
    p.finish()?;
    Ok(TrainedModel {
        algorithm: spec.algorithm,
        dimension,
        classes: enc.classes,
        standardizer,
        inner,
    })
}

#[cfg(test)]
mod tests;
