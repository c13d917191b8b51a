//! Graph embeddings of programs: AST graphs, Weisfeiler-Lehman rooted
//! subgraphs, and skipgram training of one vector per program.

mod graph;
mod io;
mod skipgram;
mod wl;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ast::{self, ParseError, SourceUnit};

pub use graph::{ast_to_graph, node_label, GraphError, LabelMode, LabeledGraph, LITERAL_LABEL};
pub use io::{
    read_embeddings_bin, read_embeddings_csv, write_embeddings_bin, write_embeddings_csv,
    EmbeddingIoError,
};
pub use skipgram::{cosine, train_on_vocabulary, EmbeddingModel, ObjectivePoint};
pub use wl::{extract_rooted_subgraphs, wl_digest, SubgraphVocabulary};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbedError {
    #[error("no subgraphs were extracted from the corpus")]
    EmptyVocabulary,
    #[error("invalid embedding config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmbeddingConfig {
    /// Vector length δ.
    pub dimension: usize,
    pub wl_depth: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub negative_samples: usize,
    /// Subgraphs rarer than this across the corpus are left out of the vocabulary.
    pub min_count: u64,
    /// Pairs sampled for the per-epoch objective; 0 disables tracking.
    pub objective_sample: usize,
    pub seed: u64,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        EmbeddingConfig {
            dimension: 1024,
            wl_depth: 3,
            epochs: 10,
            learning_rate: 0.025,
            negative_samples: 5,
            min_count: 5,
            objective_sample: 2000,
            seed: 42,
        }
    }
}

impl EmbeddingConfig {
    pub fn validate(&self) -> Result<(), EmbedError> {
        if self.dimension == 0 {
            return Err(EmbedError::InvalidConfig(
                "dimension must be positive".into(),
            ));
        }
        if self.negative_samples == 0 {
            return Err(EmbedError::InvalidConfig(
                "negative_samples must be at least 1".into(),
            ));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(EmbedError::InvalidConfig(
                "learning_rate must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Extracts rooted subgraphs of every graph (in parallel) and trains vectors.
pub fn train_embeddings(
    graphs: &[LabeledGraph],
    cfg: &EmbeddingConfig,
) -> Result<EmbeddingModel, EmbedError> {
    cfg.validate()?;
    let documents: Vec<Vec<String>> = graphs
        .par_iter()
        .map(|g| extract_rooted_subgraphs(g, cfg.wl_depth))
        .collect();
    train_on_vocabulary(SubgraphVocabulary::build(&documents, cfg.min_count), cfg)
}

/// Program vectors for a corpus, keyed by unit id.
#[derive(Debug, Clone, Default)]
pub struct CorpusEmbedding {
    pub vectors: BTreeMap<String, Vec<f32>>,
    /// Units that failed to parse; they have no vector.
    pub skipped: Vec<(String, ParseError)>,
    pub objective: Vec<ObjectivePoint>,
}

/// Parses, converts, and embeds every unit. Parse failures are logged and
/// skipped; an empty input gives an empty result.
pub fn embed_corpus(
    units: &[SourceUnit],
    mode: LabelMode,
    cfg: &EmbeddingConfig,
) -> Result<CorpusEmbedding, EmbedError> {
    cfg.validate()?;
    let parsed: Vec<(String, Result<LabeledGraph, ParseError>)> = units
        .par_iter()
        .map(|u| {
            (
                u.id.clone(),
                ast::parse(u).map(|root| ast_to_graph(&root, mode)),
            )
        })
        .collect();
    let mut ids = Vec::new();
    let mut graphs = Vec::new();
    let mut out = CorpusEmbedding::default();
    for (id, result) in parsed {
        match result {
            Ok(g) => {
                ids.push(id);
                graphs.push(g);
            }
            Err(e) => {
                log::warn!("skipping {id}: {e}");
                out.skipped.push((id, e));
            }
        }
    }
    if graphs.is_empty() {
        return Ok(out);
    }
    let model = train_embeddings(&graphs, cfg)?;
    out.vectors = ids
        .into_iter()
        .zip(model.graph_vectors().map(<[f32]>::to_vec))
        .collect();
    out.objective = model.objective;
    Ok(out)
}
