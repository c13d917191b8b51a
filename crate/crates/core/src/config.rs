//! Run configuration read from TOML: seeds, split, embedding and classifier
//! settings, ablation settings, and where artifacts go.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ablation::AblationConfig;
use crate::embed::EmbeddingConfig;
use crate::features::FeatureName;
use crate::learn::ExperimentConfig;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "RTC_OUT";
/// Output directory when neither the config nor the environment names one.
pub const DEFAULT_OUT_DIR: &str = "rtc-out";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Names the artifact directory `<out>/run-<seed>/`.
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    /// Feature columns fed to the classifiers, in canonical order.
    pub features: Vec<FeatureName>,
    pub experiment: ExperimentConfig,
    pub embedding: EmbeddingConfig,
    pub ablation: AblationConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            output_dir: None,
            features: FeatureName::ALL.to_vec(),
            experiment: ExperimentConfig::default(),
            embedding: EmbeddingConfig::default(),
            ablation: AblationConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.into(),
            source,
        })?;
        Self::from_toml(&text)
    }

    /// Sets the run seed and every derived seed to `seed`.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.experiment.split_seed = seed;
        self.experiment.model_seed = seed;
        self.embedding.seed = seed;
        self.ablation.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError::Invalid(m.to_string()));
        let r = self.experiment.split_ratio;
        if !(r > 0.0 && r < 1.0) {
            return bad("experiment.split_ratio must lie strictly between 0 and 1");
        }
        if self.experiment.algorithms.is_empty() {
            return bad("experiment.algorithms must not be empty");
        }
        if self.features.is_empty() {
            return bad("features must not be empty");
        }
        let p = self.ablation.removal_probability;
        if !(0.0..=1.0).contains(&p) {
            return bad("ablation.removal_probability must lie in [0, 1]");
        }
        if self.ablation.sample_size == 0 {
            return bad("ablation.sample_size must be positive");
        }
        self.embedding
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    /// Ablation settings with this run's split, classifiers, and embedding.
    pub fn ablation_config(&self) -> AblationConfig {
        AblationConfig {
            experiment: self.experiment.clone(),
            embedding: self.embedding.clone(),
            ..self.ablation.clone()
        }
    }

    /// Column indices of the enabled features, in canonical order.
    pub fn feature_columns(&self) -> Vec<usize> {
        FeatureName::ALL
            .iter()
            .filter(|f| self.features.contains(f))
            .map(|f| f.index())
            .collect()
    }

    /// `output_dir`, else `$RTC_OUT`, else `rtc-out`.
    pub fn out_root(&self) -> PathBuf {
        self.output_dir
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
    }

    pub fn run_dir(&self) -> PathBuf {
        self.out_root().join(format!("run-{}", self.seed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learn::Algorithm;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn sections_override_defaults() {
        let cfg = RunConfig::from_toml(
            r#"
            seed = 7
            features = ["nested_loop_depth", "sort_present"]
            [experiment]
            split_ratio = 0.7
            algorithms = ["svm", "random_forest"]
            [experiment.hyperparameters.random_forest]
            trees = 10
            [embedding]
            dimension = 32
            [ablation]
            sample_size = 5
            techniques = ["label_shuffle"]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(
            cfg.experiment.algorithms,
            vec![Algorithm::Svm, Algorithm::RandomForest]
        );
        assert_eq!(
            cfg.experiment.hyperparameters[&Algorithm::RandomForest]["trees"],
            10.0
        );
        assert_eq!(cfg.feature_columns(), vec![5, 8]);
        let ab = cfg.ablation_config();
        assert_eq!(ab.embedding.dimension, 32);
        assert_eq!(ab.experiment.split_ratio, 0.7);
        assert_eq!(ab.sample_size, 5);
    }

    #[test]
    fn unknown_keys_and_bad_ranges_are_rejected() {
        assert!(RunConfig::from_toml("sead = 1").is_err());
        assert!(RunConfig::from_toml("[experiment]\nsplit_ratio = 1.0").is_err());
        assert!(RunConfig::from_toml("[ablation]\nremoval_probability = 2.0").is_err());
        assert!(RunConfig::from_toml("[embedding]\ndimension = 0").is_err());
        assert!(RunConfig::from_toml("[ablation]\nexperiment = {}").is_err());
    }

    #[test]
    fn seed_propagates_and_names_the_run() {
        let cfg = RunConfig {
            output_dir: Some("out".into()),
            ..RunConfig::default()
        }
        .with_seed(9);
        assert_eq!(cfg.run_dir(), PathBuf::from("out/run-9"));
        assert_eq!(
            (
                cfg.experiment.split_seed,
                cfg.embedding.seed,
                cfg.ablation.seed
            ),
            (9, 9, 9)
        );
    }
}
