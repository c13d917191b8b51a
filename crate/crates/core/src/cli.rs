//! The `rtc` command line: ingest a corpus, extract features and embeddings,
//! train and evaluate classifiers, write result tables, run ablations, and
//! predict single files.
//!
//! Every command writes under `<out>/run-<seed>/`. Exit status is 0 on
//! success, 1 on usage errors, and 2 when the data is at fault.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ablation::{run_ablation_suite, write_table8_csv, Technique};
use crate::ast::SourceUnit;
use crate::config::{RunConfig, OUT_DIR_ENV};
use crate::corpus::{self, CorpusManifest};
use crate::embed::{embed_corpus, write_embeddings_bin, write_embeddings_csv, LabelMode};
use crate::features::{
    export_density, features_for_unit, write_density_csv, write_feature_csv, FeatureName,
    FeatureRow,
};
use crate::learn::{
    class_subset_experiment, evaluate, load_model, per_feature_analysis, run_grid, save_model,
    train, Algorithm, GridRow, Sample,
};
use crate::pipeline::{self, Pipeline};
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "rtc",
    version,
    about = "Predict the runtime complexity class of Java programs"
)]
pub struct Cli {
    /// TOML run configuration; every key is optional.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output root; artifacts go to `<out>/run-<seed>/`.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out: Option<PathBuf>,
    /// Overrides every seed in the configuration.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Log progress to standard error (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct CorpusArgs {
    /// Corpus root. Without it, the manifest from a previous `ingest` is used.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// `file,label` CSV; defaults to `<corpus>/labels.csv`.
    #[arg(long, requires = "corpus")]
    pub labels: Option<PathBuf>,
    /// Read labels from class-named subdirectories instead of a CSV.
    #[arg(long, requires = "corpus", conflicts_with = "labels")]
    pub class_dirs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Concat,
    Selective,
}

impl From<ModeArg> for LabelMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Concat => LabelMode::Concatenated,
            ModeArg::Selective => LabelMode::Selective,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputArg {
    Features,
    Embeddings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Bin,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a labeled corpus and record its manifest.
    Ingest(CorpusArgs),
    /// Write the feature CSV and the per-class density CSV.
    Features(CorpusArgs),
    /// Train graph embeddings for every program.
    Embed {
        #[arg(long, value_enum, default_value = "concat")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Train classifiers on one split and write models and evaluation reports.
    Train {
        #[arg(long, value_enum)]
        input: InputArg,
        /// Label mode when `--input embeddings`.
        #[arg(long, value_enum, default_value = "concat")]
        mode: ModeArg,
        /// Algorithm name (`random_forest`, `svm`, ...) or `all`.
        #[arg(long, default_value = "all")]
        algo: String,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Write one result table as CSV.
    Report {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=8))]
        table: u8,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Run data ablations against the trained pipelines.
    Ablate {
        /// Technique name (`label_shuffle`, `name_alteration`, `constant_inputs`,
        /// `substructure_removal`) or `all`.
        #[arg(long, default_value = "all")]
        technique: String,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Print the predicted class of one Java file.
    Predict {
        file: PathBuf,
        /// A model written by `train --input features`.
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

fn data<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

/// Parses the process arguments, runs the command, and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(|e| CliError::Usage(e.to_string()))?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg = cfg.with_seed(seed);
    }
    if let Some(out) = &cli.out {
        cfg.output_dir = Some(out.clone());
    }
    Ok(cfg)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = load_config(&cli)?;
    let run_dir = cfg.run_dir();
    fs::create_dir_all(&run_dir).map_err(|e| data(format!("{}: {e}", run_dir.display())))?;
    match &cli.command {
        Command::Ingest(args) => ingest(args, &run_dir),
        Command::Features(args) => features(&load_units(args, &run_dir)?, &run_dir),
        Command::Embed {
            mode,
            format,
            corpus,
        } => embed(
            &load_units(corpus, &run_dir)?,
            (*mode).into(),
            *format,
            &cfg,
            &run_dir,
        ),
        Command::Train {
            input,
            mode,
            algo,
            corpus,
        } => {
            let pipeline = match input {
                InputArg::Features => Pipeline::Features,
                InputArg::Embeddings => Pipeline::Embeddings((*mode).into()),
            };
            train_cmd(
                &load_units(corpus, &run_dir)?,
                pipeline,
                algo,
                &cfg,
                &run_dir,
            )
        }
        Command::Report { table, corpus } => {
            report_cmd(*table, &load_units(corpus, &run_dir)?, &cfg, &run_dir)
        }
        Command::Ablate { technique, corpus } => {
            ablate(&load_units(corpus, &run_dir)?, technique, &cfg, &run_dir)
        }
        Command::Predict { file, model } => predict(file, model, &cfg),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| data(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, bytes).map_err(|e| data(format!("{}: {e}", path.display())))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(data)?;
    bytes.push(b'\n');
    write_file(path, &bytes)
}

fn write_csv(
    path: &Path,
    f: impl FnOnce(&mut Vec<u8>) -> csv::Result<()>,
) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    f(&mut buf).map_err(data)?;
    write_file(path, &buf)?;
    Ok(buf)
}

fn manifest_from(args: &CorpusArgs, run_dir: &Path) -> Result<CorpusManifest, CliError> {
    match &args.corpus {
        Some(root) if args.class_dirs => corpus::ingest_class_dirs(root).map_err(data),
        Some(root) => {
            let labels = args
                .labels
                .clone()
                .unwrap_or_else(|| root.join("labels.csv"));
            corpus::ingest(root, &labels).map_err(data)
        }
        None => {
            let path = run_dir.join("manifest.json");
            let text = fs::read_to_string(&path).map_err(|_| {
                CliError::Usage(format!(
                    "no corpus given and no manifest at {}; pass --corpus or run `rtc ingest`",
                    path.display()
                ))
            })?;
            serde_json::from_str(&text).map_err(data)
        }
    }
}

fn load_units(args: &CorpusArgs, run_dir: &Path) -> Result<Vec<SourceUnit>, CliError> {
    let units = manifest_from(args, run_dir)?.load_units().map_err(data)?;
    if units.is_empty() {
        return Err(data(corpus::CorpusError::EmptyCorpus));
    }
    Ok(units)
}

fn ingest(args: &CorpusArgs, run_dir: &Path) -> Result<(), CliError> {
    if args.corpus.is_none() {
        return Err(CliError::Usage("ingest needs --corpus".into()));
    }
    let manifest = manifest_from(args, run_dir)?;
    let report = manifest.validate();
    write_json(&run_dir.join("manifest.json"), &manifest)?;
    write_json(&run_dir.join("validation.json"), &report)?;
    write_csv(&run_dir.join("labels.csv"), |b| {
        manifest.write_labels_csv(b)
    })?;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "class,files,reference");
    for (class, n) in &report.counts {
        let _ = writeln!(out, "{},{n},{}", class.as_str(), report.reference[class]);
    }
    for d in &report.discrepancies {
        log::warn!("{d}");
    }
    Ok(())
}

fn write_failures(
    path: &Path,
    skipped: &[(String, crate::ast::ParseError)],
) -> Result<(), CliError> {
    if !skipped.is_empty() {
        log::warn!("{} file(s) failed to parse and were skipped", skipped.len());
    }
    write_csv(path, |b| {
        let mut w = csv::Writer::from_writer(b);
        w.write_record(["id", "error"])?;
        for (id, e) in skipped {
            w.write_record([id.as_str(), &e.to_string()])?;
        }
        w.flush()?;
        Ok(())
    })?;
    Ok(())
}

fn features(units: &[SourceUnit], run_dir: &Path) -> Result<(), CliError> {
    use rayon::prelude::*;
    let results: Vec<_> = units
        .par_iter()
        .map(|u| (u, features_for_unit(u)))
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (u, r) in results {
        match r {
            Ok(features) => rows.push(FeatureRow {
                id: u.id.clone(),
                features,
                label: u.label,
            }),
            Err(e) => skipped.push((u.id.clone(), e)),
        }
    }
    write_failures(&run_dir.join("parse_failures.csv"), &skipped)?;
    let labeled: Vec<_> = rows
        .iter()
        .filter_map(|r| Some((r.features, r.label?)))
        .collect();
    let tables = FeatureName::ALL
        .iter()
        .map(|&f| export_density(&labeled, f))
        .collect::<Result<Vec<_>, _>>()
        .map_err(data)?;
    write_csv(&run_dir.join("features.csv"), |b| {
        write_feature_csv(&rows, b)
    })?;
    write_csv(&run_dir.join("density.csv"), |b| {
        write_density_csv(&tables, b)
    })?;
    println!("{} programs, {} skipped", rows.len(), skipped.len());
    Ok(())
}

fn mode_name(mode: LabelMode) -> &'static str {
    match mode {
        LabelMode::Concatenated => "concat",
        LabelMode::Selective => "selective",
    }
}

fn embed(
    units: &[SourceUnit],
    mode: LabelMode,
    format: FormatArg,
    cfg: &RunConfig,
    run_dir: &Path,
) -> Result<(), CliError> {
    let e = embed_corpus(units, mode, &cfg.embedding).map_err(data)?;
    let name = format!("embeddings-{}", mode_name(mode));
    write_failures(
        &run_dir.join(format!("{name}-parse_failures.csv")),
        &e.skipped,
    )?;
    let mut buf = Vec::new();
    let path = match format {
        FormatArg::Csv => {
            write_embeddings_csv(&e.vectors, &mut buf).map_err(data)?;
            run_dir.join(format!("{name}.csv"))
        }
        FormatArg::Bin => {
            write_embeddings_bin(&e.vectors, &mut buf).map_err(data)?;
            run_dir.join(format!("{name}.bin"))
        }
    };
    write_file(&path, &buf)?;
    write_json(
        &run_dir.join(format!("{name}-objective.json")),
        &e.objective,
    )?;
    println!(
        "{} programs embedded, {} skipped",
        e.vectors.len(),
        e.skipped.len()
    );
    Ok(())
}

fn project(samples: Vec<Sample>, columns: &[usize]) -> Vec<Sample> {
    if columns.len() == FeatureName::ALL.len() {
        return samples;
    }
    samples
        .into_iter()
        .map(|s| Sample {
            features: columns.iter().map(|&c| s.features[c]).collect(),
            ..s
        })
        .collect()
}

fn pipeline_samples(
    units: &[SourceUnit],
    pipeline: Pipeline,
    cfg: &RunConfig,
) -> Result<Vec<Sample>, CliError> {
    let s = pipeline::samples(units, pipeline, &cfg.embedding).map_err(data)?;
    if !s.skipped.is_empty() {
        log::warn!(
            "{} file(s) failed to parse and were skipped",
            s.skipped.len()
        );
    }
    if s.samples.is_empty() {
        return Err(data(corpus::CorpusError::EmptyCorpus));
    }
    Ok(match pipeline {
        Pipeline::Features => project(s.samples, &cfg.feature_columns()),
        Pipeline::Embeddings(_) => s.samples,
    })
}

fn parse_algorithms(algo: &str) -> Result<Vec<Algorithm>, CliError> {
    if algo == "all" {
        return Ok(Algorithm::ALL.to_vec());
    }
    algo.parse::<Algorithm>()
        .map(|a| vec![a])
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn train_cmd(
    units: &[SourceUnit],
    pipeline: Pipeline,
    algo: &str,
    cfg: &RunConfig,
    run_dir: &Path,
) -> Result<(), CliError> {
    let algorithms = parse_algorithms(algo)?;
    let samples = pipeline_samples(units, pipeline, cfg)?;
    let split = cfg.experiment.split(&samples).map_err(data)?;
    let mut rows = Vec::new();
    for algorithm in algorithms {
        let model = train(&cfg.experiment.spec(algorithm), &split.train).map_err(data)?;
        let report = evaluate(&model, &split.test).map_err(data)?;
        let stem = format!("{pipeline}-{}", algorithm.as_str());
        let mut blob = Vec::new();
        save_model(&model, &mut blob).map_err(data)?;
        write_file(&run_dir.join("models").join(format!("{stem}.rtcm")), &blob)?;
        write_json(
            &run_dir.join("reports").join(format!("{stem}.json")),
            &report,
        )?;
        rows.push(GridRow { algorithm, report });
    }
    let table = write_csv(&run_dir.join(format!("grid-{pipeline}.csv")), |b| {
        report::write_grid_csv(&rows, b)
    })?;
    std::io::stdout().write_all(&table).map_err(data)?;
    Ok(())
}

fn report_cmd(
    table: u8,
    units: &[SourceUnit],
    cfg: &RunConfig,
    run_dir: &Path,
) -> Result<(), CliError> {
    let exp = &cfg.experiment;
    let path = run_dir.join(format!("table{table}.csv"));
    let written = match table {
        3 | 5 | 6 => {
            let samples = pipeline_samples(units, Pipeline::Features, cfg)?;
            let rows = match table {
                3 => run_grid(&exp.split(&samples).map_err(data)?, exp),
                5 => class_subset_experiment(&samples, &report::SUBSET_EASY, exp),
                _ => class_subset_experiment(&samples, &report::SUBSET_HARD, exp),
            }
            .map_err(data)?;
            write_csv(&path, |b| report::write_grid_csv(&rows, b))?
        }
        4 => {
            let samples = pipeline_samples(units, Pipeline::Features, cfg)?;
            let means = per_feature_analysis(&samples, exp).map_err(data)?;
            let named: Vec<(FeatureName, f64)> = cfg
                .feature_columns()
                .into_iter()
                .map(|c| FeatureName::ALL[c])
                .zip(means)
                .collect();
            write_csv(&path, |b| report::write_per_feature_csv(&named, b))?
        }
        7 => {
            let spec = exp.spec(cfg.ablation.embedding_algorithm);
            let mut rows = Vec::new();
            for mode in [LabelMode::Concatenated, LabelMode::Selective] {
                let samples = pipeline_samples(units, Pipeline::Embeddings(mode), cfg)?;
                let split = exp.split(&samples).map_err(data)?;
                let model = train(&spec, &split.train).map_err(data)?;
                rows.push((mode, evaluate(&model, &split.test).map_err(data)?));
            }
            write_csv(&path, |b| report::write_embedding_table_csv(&rows, b))?
        }
        8 => {
            let outcome = run_ablation_suite(units, &cfg.ablation_config()).map_err(data)?;
            write_json(&run_dir.join("ablation.json"), &outcome)?;
            write_csv(&path, |b| write_table8_csv(&outcome, b))?
        }
        _ => return Err(CliError::Usage(format!("no table {table}; choose 3 to 8"))),
    };
    std::io::stdout().write_all(&written).map_err(data)?;
    Ok(())
}

fn ablate(
    units: &[SourceUnit],
    technique: &str,
    cfg: &RunConfig,
    run_dir: &Path,
) -> Result<(), CliError> {
    let mut ab = cfg.ablation_config();
    if technique != "all" {
        ab.techniques = vec![technique.parse::<Technique>().map_err(CliError::Usage)?];
    }
    let outcome = run_ablation_suite(units, &ab).map_err(data)?;
    let stem = if technique == "all" {
        "ablation".to_string()
    } else {
        format!("ablation-{technique}")
    };
    write_json(&run_dir.join(format!("{stem}.json")), &outcome)?;
    let table = write_csv(&run_dir.join(format!("{stem}.csv")), |b| {
        write_table8_csv(&outcome, b)
    })?;
    std::io::stdout().write_all(&table).map_err(data)?;
    Ok(())
}

fn predict(file: &Path, model_path: &Path, cfg: &RunConfig) -> Result<(), CliError> {
    let bytes = fs::read(model_path).map_err(|e| data(format!("{}: {e}", model_path.display())))?;
    let model = load_model(bytes.as_slice()).map_err(data)?;
    let text = fs::read_to_string(file).map_err(|e| data(format!("{}: {e}", file.display())))?;
    let unit = SourceUnit::new(file.display().to_string(), text);
    let fv = features_for_unit(&unit)
        .map_err(|e| data(format!("{}: {e}", file.display())))?
        .to_f64();
    let columns = if model.dimension == fv.len() {
        (0..fv.len()).collect()
    } else {
        cfg.feature_columns()
    };
    if columns.len() != model.dimension {
        return Err(data(format!(
            "model expects {} inputs; predict works with feature models (embeddings are corpus-relative)",
            model.dimension
        )));
    }
    let x: Vec<f64> = columns.iter().map(|&c| fv[c]).collect();
    println!("{}", model.predict(&x).map_err(data)?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from([
            "rtc",
            "train",
            "--input",
            "embeddings",
            "--mode",
            "selective",
            "--algo",
            "svm",
        ])
        .unwrap();
        assert!(matches!(
            cli.command,
            Command::Train {
                input: InputArg::Embeddings,
                mode: ModeArg::Selective,
                ..
            }
        ));
        assert!(Cli::try_parse_from(["rtc", "report", "--table", "9"]).is_err());
        assert!(Cli::try_parse_from(["rtc", "features", "--labels", "x.csv"]).is_err());
    }

    #[test]
    fn algorithm_names() {
        assert_eq!(parse_algorithms("all").unwrap().len(), 8);
        assert_eq!(
            parse_algorithms("random_forest").unwrap(),
            vec![Algorithm::RandomForest]
        );
        assert!(matches!(
            parse_algorithms("xgboost"),
            Err(CliError::Usage(_))
        ));
    }
}
