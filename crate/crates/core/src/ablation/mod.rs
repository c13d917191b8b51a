//! Data-ablation probes: label shuffling, identifier renaming, constant
//! inputs, and random removal of loops and conditionals.

mod inputs;
mod remove;
mod rename;
mod suite;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ast::ParseError;
use crate::embed::EmbedError;
use crate::learn::{DatasetSplit, LearnError};

pub use inputs::{
    constant_inputs, constant_inputs_tree, count_input_reads, CONSTANT_INPUT, INPUT_READS,
    INPUT_WRAPPERS,
};
pub use remove::{remove_substructures, remove_substructures_tree, REMOVABLE};
pub use rename::{rename_identifiers, rename_tree, PRESERVED_NAMES};
pub use suite::{
    run_ablation_suite, write_table8_csv, AblationConfig, AblationOutcome, AblationReport, Metric,
    SampleLog,
};

#[derive(Debug, thiserror::Error)]
pub enum AblationError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no input-read expression found in `{0}`")]
    NoInputDetected(String),
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Technique {
    LabelShuffle,
    NameAlteration,
    ConstantInputs,
    SubstructureRemoval,
}

impl Technique {
    pub const ALL: [Technique; 4] = [
        Technique::LabelShuffle,
        Technique::NameAlteration,
        Technique::ConstantInputs,
        Technique::SubstructureRemoval,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Technique::LabelShuffle => "label_shuffle",
            Technique::NameAlteration => "name_alteration",
            Technique::ConstantInputs => "constant_inputs",
            Technique::SubstructureRemoval => "substructure_removal",
        }
    }

    /// Row name in the ablation table.
    pub fn title(self) -> &'static str {
        match self {
            Technique::LabelShuffle => "Label Shuffling",
            Technique::NameAlteration => "Method/Variable Name Alteration",
            Technique::ConstantInputs => "Replacing Input Variables with Constant Literals",
            Technique::SubstructureRemoval => "Removing Graph Substructures",
        }
    }
}

impl std::str::FromStr for Technique {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Technique::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown technique `{s}`"))
    }
}

/// Permutes the training labels; vectors and the test half are untouched.
pub fn shuffle_labels(split: &DatasetSplit, seed: u64) -> DatasetSplit {
    let mut labels: Vec<_> = split.train.iter().map(|s| s.label).collect();
    labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut out = split.clone();
    for (s, l) in out.train.iter_mut().zip(labels) {
        s.label = l;
    }
    out
}
