//! Labeled corpora on disk: a `file,label` CSV next to a directory of Java
//! sources, plus an adapter for trees laid out as one directory per class.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ast::SourceUnit;
use crate::class::ComplexityClass;

/// Published class sizes of the reference dataset.
pub const REFERENCE_COUNTS: [(ComplexityClass, usize); 5] = [
    (ComplexityClass::ON, 385),
    (ComplexityClass::ONSquare, 200),
    (ComplexityClass::ONLogN, 150),
    (ComplexityClass::O1, 143),
    (ComplexityClass::OLogN, 55),
];

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("labels file: {0}")]
    Csv(#[from] csv::Error),
    #[error("labels file must have columns `file,label`, found {0:?}")]
    BadHeader(Vec<String>),
    #[error("missing file {0}")]
    MissingFile(PathBuf),
    #[error("{file}: unknown label `{label}`")]
    UnknownLabel { file: String, label: String },
    #[error("{0} is not valid UTF-8")]
    NotUtf8(PathBuf),
    #[error("{0} is listed twice")]
    Duplicate(String),
    #[error("empty corpus")]
    EmptyCorpus,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Relative to the manifest root, with `/` separators.
    pub path: String,
    pub label: ComplexityClass,
    /// Hex SHA-256 of the file bytes.
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub root: PathBuf,
    pub entries: Vec<ManifestEntry>,
}

/// Class counts of a manifest next to the reference sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub total: usize,
    pub counts: BTreeMap<ComplexityClass, usize>,
    pub reference: BTreeMap<ComplexityClass, usize>,
    /// Human-readable mismatches against the reference; empty when it matches.
    pub discrepancies: Vec<String>,
}

impl CorpusManifest {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn class_counts(&self) -> BTreeMap<ComplexityClass, usize> {
        let mut counts: BTreeMap<_, _> = ComplexityClass::ALL.iter().map(|&c| (c, 0)).collect();
        for e in &self.entries {
            *counts.entry(e.label).or_default() += 1;
        }
        counts
    }

    pub fn validate(&self) -> ValidationReport {
        let counts = self.class_counts();
        let reference: BTreeMap<_, _> = REFERENCE_COUNTS.into_iter().collect();
        let mut discrepancies = Vec::new();
        for (class, &want) in &reference {
            let got = counts[class];
            if got != want {
                discrepancies.push(format!(
                    "{}: {got} files, reference has {want}",
                    class.big_o()
                ));
            }
        }
        ValidationReport {
            total: self.entries.len(),
            counts,
            reference,
            discrepancies,
        }
    }

    /// Reads every file (in parallel) and re-checks its checksum.
    pub fn load_units(&self) -> Result<Vec<SourceUnit>, CorpusError> {
        self.entries
            .par_iter()
            .map(|e| {
                let path = self.root.join(&e.path);
                let (text, sum) = read_source(&path)?;
                if sum != e.sha256 {
                    log::warn!("{}: checksum changed since ingest", e.path);
                }
                Ok(SourceUnit::labeled(e.path.clone(), text, e.label))
            })
            .collect()
    }

    /// Writes the canonical `file,label` CSV for this manifest.
    pub fn write_labels_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["file", "label"])?;
        for e in &self.entries {
            w.write_record([e.path.as_str(), e.label.as_str()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn read_source(path: &Path) -> Result<(String, String), CorpusError> {
    if !path.is_file() {
        return Err(CorpusError::MissingFile(path.to_path_buf()));
    }
    let bytes = fs::read(path).map_err(io_err(path))?;
    let sum = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| CorpusError::NotUtf8(path.to_path_buf()))?;
    Ok((text, sum))
}

fn checked_entries(
    root: &Path,
    rows: Vec<(String, ComplexityClass)>,
) -> Result<CorpusManifest, CorpusError> {
    if rows.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut seen = std::collections::HashSet::new();
    for (path, _) in &rows {
        if !seen.insert(path.as_str()) {
            return Err(CorpusError::Duplicate(path.clone()));
        }
    }
    let entries = rows
        .into_par_iter()
        .map(|(path, label)| {
            let (_, sha256) = read_source(&root.join(&path))?;
            Ok(ManifestEntry {
                path,
                label,
                sha256,
            })
        })
        .collect::<Result<Vec<_>, CorpusError>>()?;
    Ok(CorpusManifest {
        root: root.to_path_buf(),
        entries,
    })
}

/// Reads `labels` (columns `file,label`, paths relative to `root`) and checks
/// that every listed file exists and is UTF-8.
pub fn ingest(root: &Path, labels: &Path) -> Result<CorpusManifest, CorpusError> {
    let file = fs::File::open(labels).map_err(io_err(labels))?;
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != ["file", "label"] {
        return Err(CorpusError::BadHeader(header));
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let (file, label) = (&record[0], &record[1]);
        let class = label.parse().map_err(|_| CorpusError::UnknownLabel {
            file: file.to_string(),
            label: label.to_string(),
        })?;
        rows.push((file.replace('\\', "/"), class));
    }
    checked_entries(root, rows)
}

/// Maps a class directory name to its class. Accepts the serialized names and
/// the usual spellings: `O(n^2)`, `n2`, `nsquare`, `constant`, `O(n log n)`.
pub fn class_from_dir_name(name: &str) -> Option<ComplexityClass> {
    let mut key: String = name
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    if let Some(inner) = key.strip_prefix("o(").and_then(|k| k.strip_suffix(')')) {
        key = inner.to_string();
    }
    let key = key.replace(['_', '-', '*'], "");
    match key.as_str() {
        "1" | "constant" => Some(ComplexityClass::O1),
        "logn" | "log" | "logarithmic" => Some(ComplexityClass::OLogN),
        "n" | "linear" => Some(ComplexityClass::ON),
        "nlogn" | "linearithmic" => Some(ComplexityClass::ONLogN),
        "nsquare" | "n^2" | "n2" | "nn" | "quadratic" => Some(ComplexityClass::ONSquare),
        _ => None,
    }
}

/// Adapter for corpora stored as `<root>/<class dir>/**/*.java`. Directories
/// whose names are not a recognizable class are skipped with a warning.
pub fn ingest_class_dirs(root: &Path) -> Result<CorpusManifest, CorpusError> {
    let mut rows = Vec::new();
    let mut dirs: Vec<_> = fs::read_dir(root)
        .map_err(io_err(root))?
        .filter_map(Result::ok)
        .filter(|e| e.path().is_dir())
        .collect();
    dirs.sort_by_key(|e| e.file_name());
    for dir in dirs {
        let name = dir.file_name().to_string_lossy().into_owned();
        let Some(class) = class_from_dir_name(&name) else {
            log::warn!("skipping directory `{name}`: not a complexity class");
            continue;
        };
        let mut files = Vec::new();
        collect_java(&dir.path(), &mut files)?;
        files.sort();
        for f in files {
            let rel = f.strip_prefix(root).expect("walked under root");
            let rel = rel
                .components()
                .map(|c| c.as_os_str().to_string_lossy())
                .collect::<Vec<_>>()
                .join("/");
            rows.push((rel, class));
        }
    }
    checked_entries(root, rows)
}

fn collect_java(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), CorpusError> {
    for entry in fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        if path.is_dir() {
            collect_java(&path, out)?;
        } else if path.extension().is_some_and(|x| x == "java") {
            out.push(path);
        }
    }
    Ok(())
}

/// Lays `units` out under `root` (ids become relative paths) and writes
/// `root/labels.csv`. Units without a label are rejected.
pub fn write_corpus(root: &Path, units: &[SourceUnit]) -> Result<PathBuf, CorpusError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["file", "label"])?;
    for u in units {
        let label = u.label.ok_or_else(|| CorpusError::UnknownLabel {
            file: u.id.clone(),
            label: String::new(),
        })?;
        let path = root.join(&u.id);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(io_err(parent))?;
        }
        fs::write(&path, &u.text).map_err(io_err(&path))?;
        w.write_record([u.id.as_str(), label.as_str()])?;
    }
    let labels = root.join("labels.csv");
    let bytes = w.into_inner().map_err(|e| CorpusError::Io {
        path: labels.clone(),
        source: e.into_error(),
    })?;
    fs::write(&labels, bytes).map_err(io_err(&labels))?;
    Ok(labels)
}
