//! Learns graph embeddings for a synthetic corpus, prints the training
//! objective per epoch, and lists each class's nearest neighbors by cosine.
//!
//!     cargo run --release --example train_embeddings

use runtime_complexity::embed::{cosine, embed_corpus, EmbeddingConfig, LabelMode};
use runtime_complexity::synth::java_corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let units = java_corpus(20, 9);
    let cfg = EmbeddingConfig {
        dimension: 64,
        epochs: 15,
        min_count: 2,
        ..EmbeddingConfig::default()
    };
    let e = embed_corpus(&units, LabelMode::Concatenated, &cfg)?;
    for p in &e.objective {
        println!(
            "epoch {:>2}: objective {:.4} (sd {:.4})",
            p.epoch, p.mean, p.std
        );
    }

    let ids: Vec<&String> = e.vectors.keys().collect();
    for probe in units.iter().step_by(20) {
        let v = &e.vectors[&probe.id];
        let mut scored: Vec<(f64, &String)> = ids
            .iter()
            .filter(|id| **id != &probe.id)
            .map(|id| (cosine(v, &e.vectors[*id]), *id))
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));
        let top: Vec<String> = scored
            .iter()
            .take(3)
            .map(|(c, id)| format!("{id} ({c:.2})"))
            .collect();
        println!("{} -> {}", probe.id, top.join(", "));
    }
    Ok(())
}
