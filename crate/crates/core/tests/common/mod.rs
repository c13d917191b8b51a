#![allow(dead_code)]

use std::path::{Path, PathBuf};

use runtime_complexity::features::FeatureVector;

pub struct Golden {
    pub name: String,
    pub source: String,
    pub expected: FeatureVector,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden")
}

/// Every `NN_name.java` fixture with its hand-traced `NN_name.toml` vector.
pub fn golden_fixtures() -> Vec<Golden> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .expect("golden fixture directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "java"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|java| {
            let source = std::fs::read_to_string(&java).unwrap();
            let expected = std::fs::read_to_string(java.with_extension("toml")).unwrap();
            Golden {
                name: java.file_stem().unwrap().to_string_lossy().into_owned(),
                source,
                expected: toml::from_str(&expected).unwrap(),
            }
        })
        .collect()
}
