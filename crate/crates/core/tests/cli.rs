use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use runtime_complexity::corpus::write_corpus;
use runtime_complexity::synth::java_corpus;

const SMALL: &str =
    "[embedding]\ndimension = 16\nepochs = 3\nmin_count = 1\n[ablation]\nsample_size = 5\n";

fn rtc(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtc"))
        .args(args)
        .env("RTC_OUT", out)
        .env_remove("RUST_LOG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn setup(per_class: usize) -> (tempfile::TempDir, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    write_corpus(&corpus, &java_corpus(per_class, 5)).unwrap();
    let config = dir.path().join("run.toml");
    fs::write(&config, SMALL).unwrap();
    (
        dir,
        corpus.display().to_string(),
        config.display().to_string(),
    )
}

#[test]
fn ingest_then_features_reuses_the_manifest() {
    let (dir, corpus, _) = setup(4);
    let out = dir.path().join("out");
    let o = rtc(&out, &["ingest", "--corpus", &corpus]);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("n_square,4,200"));
    let run = out.join("run-42");
    for f in ["manifest.json", "validation.json", "labels.csv"] {
        assert!(run.join(f).is_file(), "{f}");
    }
    assert!(rtc(&out, &["features"]).status.success());
    let first = fs::read(run.join("features.csv")).unwrap();
    assert_eq!(String::from_utf8_lossy(&first).lines().count(), 21);
    assert!(run.join("density.csv").is_file());
    assert!(rtc(&out, &["features"]).status.success());
    assert_eq!(fs::read(run.join("features.csv")).unwrap(), first);
}

#[test]
fn seed_flag_selects_the_run_directory() {
    let (dir, corpus, _) = setup(2);
    let out = dir.path().join("out");
    assert!(rtc(&out, &["--seed", "7", "features", "--corpus", &corpus])
        .status
        .success());
    assert!(out.join("run-7/features.csv").is_file());
}

#[test]
fn empty_corpus_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("labels.csv"), "file,label\n").unwrap();
    let o = rtc(
        &dir.path().join("out"),
        &["features", "--corpus", &dir.path().display().to_string()],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty corpus"));
}

#[test]
fn unknown_label_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.java"), "class A { }").unwrap();
    fs::write(dir.path().join("labels.csv"), "file,label\na.java,n_cube\n").unwrap();
    let o = rtc(
        &dir.path().join("out"),
        &["ingest", "--corpus", &dir.path().display().to_string()],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert_eq!(
        rtc(&out, &["report", "--table", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(rtc(&out, &["frobnicate"]).status.code(), Some(1));
    assert_eq!(rtc(&out, &["features"]).status.code(), Some(1));
    assert_eq!(rtc(&out, &["--help"]).status.code(), Some(0));
}

#[test]
fn trained_feature_model_predicts_hello_world_as_constant() {
    let (dir, corpus, _) = setup(12);
    let out = dir.path().join("out");
    let o = rtc(
        &out,
        &[
            "train",
            "--input",
            "features",
            "--algo",
            "random_forest",
            "--corpus",
            &corpus,
        ],
    );
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).starts_with("Algorithm,Accuracy,Precision,Recall\nRandom forest,"));
    let run = out.join("run-42");
    let model = run.join("models/features-random_forest.rtcm");
    let report: serde_json::Value =
        serde_json::from_slice(&fs::read(run.join("reports/features-random_forest.json")).unwrap())
            .unwrap();
    assert!(report["accuracy"].as_f64().unwrap() > 80.0);

    let hello = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/HelloWorld.java");
    let o = rtc(
        &out,
        &[
            "predict",
            &hello.display().to_string(),
            "--model",
            &model.display().to_string(),
        ],
    );
    assert!(o.status.success(), "{o:?}");
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn report_tables_have_their_shapes() {
    let (dir, corpus, config) = setup(6);
    let out = dir.path().join("out");
    let expected = [
        (3, 9, 4),
        (4, 15, 2),
        (5, 9, 4),
        (6, 9, 4),
        (7, 3, 4),
        (8, 5, 4),
    ];
    for (table, rows, cols) in expected {
        let t = table.to_string();
        let o = rtc(
            &out,
            &[
                "--config", &config, "report", "--table", &t, "--corpus", &corpus,
            ],
        );
        assert!(o.status.success(), "table {t}: {o:?}");
        let csv = fs::read_to_string(out.join(format!("run-42/table{t}.csv"))).unwrap();
        let mut r = csv::Reader::from_reader(csv.as_bytes());
        assert_eq!(r.headers().unwrap().len(), cols, "table {t}");
        assert_eq!(csv.lines().count(), rows, "table {t}");
    }
}

#[test]
fn embed_writes_csv_and_binary() {
    let (dir, corpus, config) = setup(3);
    let out = dir.path().join("out");
    let o = rtc(
        &out,
        &[
            "--config",
            &config,
            "embed",
            "--mode",
            "selective",
            "--corpus",
            &corpus,
        ],
    );
    assert!(o.status.success(), "{o:?}");
    let csv = fs::read_to_string(out.join("run-42/embeddings-selective.csv")).unwrap();
    assert!(csv.starts_with("id,d0,d1,"));
    assert_eq!(csv.lines().count(), 16);
    let o = rtc(
        &out,
        &[
            "--config", &config, "embed", "--format", "bin", "--corpus", &corpus,
        ],
    );
    assert!(o.status.success());
    let bin = fs::read(out.join("run-42/embeddings-concat.bin")).unwrap();
    let parsed = runtime_complexity::embed::read_embeddings_bin(bin.as_slice()).unwrap();
    assert_eq!(parsed.len(), 15);
    assert!(parsed.values().all(|v| v.len() == 16));
}

#[test]
fn single_technique_ablation() {
    let (dir, corpus, config) = setup(6);
    let out = dir.path().join("out");
    let o = rtc(
        &out,
        &[
            "--config",
            &config,
            "ablate",
            "--technique",
            "label_shuffle",
            "--corpus",
            &corpus,
        ],
    );
    assert!(o.status.success(), "{o:?}");
    let table = fs::read_to_string(out.join("run-42/ablation-label_shuffle.csv")).unwrap();
    assert!(table
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("Label Shuffling,"));
    let o = rtc(
        &out,
        &["ablate", "--technique", "teleport", "--corpus", &corpus],
    );
    assert_eq!(o.status.code(), Some(1));
}
