//! From labeled source units to classifier samples, for either pipeline.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ast::{ParseError, SourceUnit};
use crate::embed::{embed_corpus, EmbedError, EmbeddingConfig, LabelMode};
use crate::features::features_for_unit;
use crate::learn::Sample;

/// Serialized as `features`, `embeddings_concat`, or `embeddings_selective`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Pipeline {
    Features,
    Embeddings(LabelMode),
}

impl Pipeline {
    pub const ALL: [Pipeline; 3] = [
        Pipeline::Features,
        Pipeline::Embeddings(LabelMode::Concatenated),
        Pipeline::Embeddings(LabelMode::Selective),
    ];

    /// Column name in the ablation table.
    pub fn title(self) -> &'static str {
        match self {
            Pipeline::Features => "Feature Engineering",
            Pipeline::Embeddings(LabelMode::Concatenated) => "Graph2vec: With Concatenation",
            Pipeline::Embeddings(LabelMode::Selective) => "Graph2vec: Without Concatenation",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pipeline::Features => f.write_str("features"),
            Pipeline::Embeddings(LabelMode::Concatenated) => f.write_str("embeddings_concat"),
            Pipeline::Embeddings(LabelMode::Selective) => f.write_str("embeddings_selective"),
        }
    }
}

impl std::str::FromStr for Pipeline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| format!("unknown pipeline `{s}`"))
    }
}

impl TryFrom<String> for Pipeline {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Pipeline> for String {
    fn from(p: Pipeline) -> String {
        p.to_string()
    }
}

/// Samples for the units that parsed, in input order, plus the failures.
/// Unlabeled units are left out.
#[derive(Debug, Clone, Default)]
pub struct Samples {
    pub samples: Vec<Sample>,
    pub skipped: Vec<(String, ParseError)>,
}

pub fn feature_samples(units: &[SourceUnit]) -> Samples {
    let results: Vec<_> = units
        .par_iter()
        .map(|u| (u, features_for_unit(u)))
        .collect();
    let mut out = Samples::default();
    for (unit, result) in results {
        match result {
            Ok(fv) => {
                if let Some(label) = unit.label {
                    out.samples
                        .push(Sample::new(unit.id.clone(), fv.to_f64(), label));
                }
            }
            Err(e) => {
                log::warn!("skipping {}: {e}", unit.id);
                out.skipped.push((unit.id.clone(), e));
            }
        }
    }
    out
}

pub fn embedding_samples(
    units: &[SourceUnit],
    mode: LabelMode,
    cfg: &EmbeddingConfig,
) -> Result<Samples, EmbedError> {
    let embedded = embed_corpus(units, mode, cfg)?;
    let samples = units
        .iter()
        .filter_map(|u| {
            let v = embedded.vectors.get(&u.id)?;
            Some(Sample::new(
                u.id.clone(),
                v.iter().map(|&x| f64::from(x)).collect(),
                u.label?,
            ))
        })
        .collect();
    Ok(Samples {
        samples,
        skipped: embedded.skipped,
    })
}

pub fn samples(
    units: &[SourceUnit],
    pipeline: Pipeline,
    cfg: &EmbeddingConfig,
) -> Result<Samples, EmbedError> {
    match pipeline {
        Pipeline::Features => Ok(feature_samples(units)),
        Pipeline::Embeddings(mode) => embedding_samples(units, mode, cfg),
    }
}
