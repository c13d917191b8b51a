//! Runs every ablation against the feature pipeline and both embedding
//! pipelines on a synthetic corpus and prints the result table.
//!
//!     cargo run --release --example ablation_suite

use runtime_complexity::ablation::{run_ablation_suite, write_table8_csv, AblationConfig};
use runtime_complexity::embed::EmbeddingConfig;
use runtime_complexity::synth::java_corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let units = java_corpus(30, 17);
    let cfg = AblationConfig {
        embedding: EmbeddingConfig {
            dimension: 64,
            epochs: 10,
            min_count: 2,
            ..EmbeddingConfig::default()
        },
        sample_size: 20,
        ..AblationConfig::default()
    };
    let outcome = run_ablation_suite(&units, &cfg)?;
    for r in &outcome.reports {
        println!(
            "{:<22} {:<22} baseline {:6.2}  {:?} {}",
            r.technique.as_str(),
            r.pipeline.to_string(),
            r.baseline_accuracy,
            r.metric,
            r.value.map_or("NA".to_string(), |v| format!("{v:.2}"))
        );
    }
    println!();
    write_table8_csv(&outcome, std::io::stdout())?;
    Ok(())
}
