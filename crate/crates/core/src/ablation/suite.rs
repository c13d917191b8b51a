use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    constant_inputs, remove_substructures, rename_identifiers, shuffle_labels, AblationError,
    Technique,
};
use crate::ast::SourceUnit;
use crate::class::ComplexityClass;
use crate::embed::EmbeddingConfig;
use crate::features::features_for_unit;
use crate::learn::{
    evaluate, train, Algorithm, DatasetSplit, ExperimentConfig, Sample, TrainedModel,
};
use crate::pipeline::{self, Pipeline};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AblationConfig {
    /// Filled from the surrounding run configuration when read from a file.
    #[serde(skip)]
    pub experiment: ExperimentConfig,
    #[serde(skip)]
    pub embedding: EmbeddingConfig,
    pub feature_algorithm: Algorithm,
    pub embedding_algorithm: Algorithm,
    /// Correctly predicted test programs drawn for the transform probes.
    pub sample_size: usize,
    pub removal_probability: f64,
    /// Drives label shuffling, sample selection, and removal.
    pub seed: u64,
    pub techniques: Vec<Technique>,
    pub pipelines: Vec<Pipeline>,
}

impl Default for AblationConfig {
    fn default() -> Self {
        AblationConfig {
            experiment: ExperimentConfig::default(),
            embedding: EmbeddingConfig::default(),
            feature_algorithm: Algorithm::RandomForest,
            embedding_algorithm: Algorithm::Svm,
            sample_size: 50,
            removal_probability: 0.1,
            seed: 42,
            techniques: Technique::ALL.to_vec(),
            pipelines: Pipeline::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Test accuracy of a model trained on shuffled labels.
    Accuracy,
    /// Share of transformed samples whose prediction did not change.
    Retention,
    /// Share of transformed samples still predicted correctly.
    StillCorrect,
    /// Share of transformed samples predicted O(1).
    ConstantRate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationReport {
    pub technique: Technique,
    pub pipeline: Pipeline,
    pub metric: Metric,
    /// Percent; `None` where the probe does not apply to the pipeline.
    pub value: Option<f64>,
    pub baseline_accuracy: f64,
    /// Samples the transform was applied to (empty for label shuffling).
    pub sample_ids: Vec<String>,
    /// Selected samples that could not be transformed.
    pub failed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleLog {
    pub technique: Technique,
    pub pipeline: Pipeline,
    pub id: String,
    pub label: ComplexityClass,
    pub before: ComplexityClass,
    pub after: Option<ComplexityClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AblationOutcome {
    pub reports: Vec<AblationReport>,
    pub log: Vec<SampleLog>,
}

impl AblationOutcome {
    pub fn get(&self, technique: Technique, pipeline: Pipeline) -> Option<&AblationReport> {
        self.reports
            .iter()
            .find(|r| r.technique == technique && r.pipeline == pipeline)
    }
}

struct Baseline {
    pipeline: Pipeline,
    split: DatasetSplit,
    model: TrainedModel,
    accuracy: f64,
    /// Test samples predicted correctly, drawn for the transform probes.
    selected: Vec<Sample>,
}

impl Baseline {
    fn build(
        units: &[SourceUnit],
        pipeline: Pipeline,
        cfg: &AblationConfig,
    ) -> Result<Self, AblationError> {
        let samples = pipeline::samples(units, pipeline, &cfg.embedding)?.samples;
        let split = cfg.experiment.split(&samples)?;
        let model = train(&cfg.experiment.spec(cfg.algorithm(pipeline)), &split.train)?;
        let accuracy = evaluate(&model, &split.test)?.accuracy;
        let mut correct: Vec<Sample> = Vec::new();
        for s in &split.test {
            if model.predict(&s.features)? == s.label {
                correct.push(s.clone());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut selected: Vec<Sample> = correct
            .choose_multiple(&mut rng, cfg.sample_size)
            .cloned()
            .collect();
        selected.sort_by(|a, b| a.id.cmp(&b.id));
        if selected.len() < cfg.sample_size {
            log::warn!(
                "{pipeline}: only {} correctly predicted test samples",
                selected.len()
            );
        }
        Ok(Baseline {
            pipeline,
            split,
            model,
            accuracy,
            selected,
        })
    }

    /// Predictions for transformed units. Features are recomputed directly;
    /// embeddings are retrained on the corpus with the transformed units in
    /// place of their originals, followed by a fresh classifier on the same
    /// training ids.
    fn predict_transformed(
        &self,
        units: &[SourceUnit],
        transformed: &BTreeMap<String, SourceUnit>,
        cfg: &AblationConfig,
    ) -> Result<BTreeMap<String, ComplexityClass>, AblationError> {
        let mut out = BTreeMap::new();
        match self.pipeline {
            Pipeline::Features => {
                for (id, unit) in transformed {
                    let fv = features_for_unit(unit)?;
                    out.insert(id.clone(), self.model.predict(&fv.to_f64())?);
                }
            }
            Pipeline::Embeddings(_) => {
                let corpus: Vec<SourceUnit> = units
                    .iter()
                    .map(|u| transformed.get(&u.id).unwrap_or(u).clone())
                    .collect();
                let samples = pipeline::samples(&corpus, self.pipeline, &cfg.embedding)?.samples;
                let train_ids: BTreeSet<&str> =
                    self.split.train.iter().map(|s| s.id.as_str()).collect();
                let train_set: Vec<Sample> = samples
                    .iter()
                    .filter(|s| train_ids.contains(s.id.as_str()))
                    .cloned()
                    .collect();
                let model = train(
                    &cfg.experiment.spec(cfg.algorithm(self.pipeline)),
                    &train_set,
                )?;
                for s in samples.iter().filter(|s| transformed.contains_key(&s.id)) {
                    out.insert(s.id.clone(), model.predict(&s.features)?);
                }
            }
        }
        Ok(out)
    }
}

impl AblationConfig {
    fn algorithm(&self, pipeline: Pipeline) -> Algorithm {
        match pipeline {
            Pipeline::Features => self.feature_algorithm,
            Pipeline::Embeddings(_) => self.embedding_algorithm,
        }
    }
}

fn applies(technique: Technique, pipeline: Pipeline) -> bool {
    !(pipeline == Pipeline::Features
        && matches!(
            technique,
            Technique::NameAlteration | Technique::ConstantInputs
        ))
}

fn transform(
    technique: Technique,
    unit: &SourceUnit,
    cfg: &AblationConfig,
) -> Result<SourceUnit, AblationError> {
    match technique {
        Technique::NameAlteration => Ok(rename_identifiers(unit)?),
        Technique::ConstantInputs => constant_inputs(unit),
        Technique::SubstructureRemoval => {
            remove_substructures(unit, cfg.removal_probability, cfg.seed)
        }
        Technique::LabelShuffle => unreachable!("label shuffling does not transform programs"),
    }
}

fn run_technique(
    technique: Technique,
    base: &Baseline,
    units: &[SourceUnit],
    cfg: &AblationConfig,
    log: &mut Vec<SampleLog>,
) -> Result<AblationReport, AblationError> {
    let mut report = AblationReport {
        technique,
        pipeline: base.pipeline,
        metric: match technique {
            Technique::LabelShuffle => Metric::Accuracy,
            Technique::NameAlteration => Metric::Retention,
            Technique::ConstantInputs => Metric::ConstantRate,
            Technique::SubstructureRemoval => Metric::StillCorrect,
        },
        value: None,
        baseline_accuracy: base.accuracy,
        sample_ids: Vec::new(),
        failed: Vec::new(),
    };
    if !applies(technique, base.pipeline) {
        return Ok(report);
    }
    if technique == Technique::LabelShuffle {
        let shuffled = shuffle_labels(&base.split, cfg.seed);
        let model = train(
            &cfg.experiment.spec(cfg.algorithm(base.pipeline)),
            &shuffled.train,
        )?;
        report.value = Some(evaluate(&model, &shuffled.test)?.accuracy);
        return Ok(report);
    }

    let by_id: BTreeMap<&str, &SourceUnit> = units.iter().map(|u| (u.id.as_str(), u)).collect();
    let results: Vec<(&Sample, Result<SourceUnit, AblationError>)> = base
        .selected
        .par_iter()
        .map(|s| (s, transform(technique, by_id[s.id.as_str()], cfg)))
        .collect();
    let mut transformed = BTreeMap::new();
    for (sample, result) in results {
        match result {
            Ok(unit) => {
                transformed.insert(sample.id.clone(), unit);
            }
            Err(e) => {
                report.failed.push(sample.id.clone());
                log.push(SampleLog {
                    technique,
                    pipeline: base.pipeline,
                    id: sample.id.clone(),
                    label: sample.label,
                    before: sample.label,
                    after: None,
                    note: Some(e.to_string()),
                });
            }
        }
    }
    let predicted = base.predict_transformed(units, &transformed, cfg)?;
    let mut hits = 0usize;
    for sample in &base.selected {
        let Some(&after) = predicted.get(&sample.id) else {
            continue;
        };
        // Selected samples were predicted correctly, so `before` is the label.
        let before = sample.label;
        let hit = match technique {
            Technique::NameAlteration => after == before,
            Technique::SubstructureRemoval => after == sample.label,
            Technique::ConstantInputs => after == ComplexityClass::O1,
            Technique::LabelShuffle => unreachable!(),
        };
        hits += usize::from(hit);
        report.sample_ids.push(sample.id.clone());
        log.push(SampleLog {
            technique,
            pipeline: base.pipeline,
            id: sample.id.clone(),
            label: sample.label,
            before,
            after: Some(after),
            note: None,
        });
    }
    if !report.sample_ids.is_empty() {
        report.value = Some(100.0 * hits as f64 / report.sample_ids.len() as f64);
    }
    Ok(report)
}

/// Runs every configured technique against every configured pipeline.
/// Techniques run in order with fixed seeds; units are transformed in parallel.
pub fn run_ablation_suite(
    units: &[SourceUnit],
    cfg: &AblationConfig,
) -> Result<AblationOutcome, AblationError> {
    let mut outcome = AblationOutcome::default();
    for &pipeline in &cfg.pipelines {
        let base = Baseline::build(units, pipeline, cfg)?;
        log::info!(
            "{pipeline}: baseline accuracy {:.2}, {} samples selected",
            base.accuracy,
            base.selected.len()
        );
        for &technique in &cfg.techniques {
            let report = run_technique(technique, &base, units, cfg, &mut outcome.log)?;
            outcome.reports.push(report);
        }
    }
    Ok(outcome)
}

/// Technique rows by pipeline columns; `NA` where a probe does not apply and
/// an empty cell where it was not run.
pub fn write_table8_csv<W: Write>(outcome: &AblationOutcome, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["Ablation Technique"];
    header.extend(Pipeline::ALL.iter().map(|p| p.title()));
    w.write_record(&header)?;
    for technique in Technique::ALL {
        let mut row = vec![technique.title().to_string()];
        for pipeline in Pipeline::ALL {
            row.push(match outcome.get(technique, pipeline) {
                None => String::new(),
                Some(r) => match r.value {
                    Some(v) => format!("{v:.2}"),
                    None if !applies(technique, pipeline) => "NA".to_string(),
                    None => String::new(),
                },
            });
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
