//! Per-feature accuracy (each feature alone, averaged over the classifiers)
//! and the two three-class subsets, on a synthetic corpus.

use runtime_complexity::features::FeatureName;
use runtime_complexity::learn::{class_subset_experiment, per_feature_analysis, ExperimentConfig};
use runtime_complexity::pipeline::feature_samples;
use runtime_complexity::report::{rank_features, SUBSET_EASY, SUBSET_HARD};
use runtime_complexity::synth::java_corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples = feature_samples(&java_corpus(40, 4)).samples;
    let cfg = ExperimentConfig::default();

    let means = per_feature_analysis(&samples, &cfg)?;
    let named: Vec<(FeatureName, f64)> = FeatureName::ALL.into_iter().zip(means).collect();
    println!("features ranked by mean accuracy when used alone:");
    for (f, m) in rank_features(&named) {
        println!("  {:<24} {m:6.2}", f.title());
    }

    let easy = class_subset_experiment(&samples, &SUBSET_EASY, &cfg)?;
    let hard = class_subset_experiment(&samples, &SUBSET_HARD, &cfg)?;
    println!(
        "\n{:<20} {:>14} {:>18}",
        "algorithm", "O(1),O(n),O(n^2)", "O(1),O(logn),O(nlogn)"
    );
    for (e, h) in easy.iter().zip(&hard) {
        println!(
            "{:<20} {:>14.2} {:>18.2}",
            e.algorithm.title(),
            e.report.accuracy,
            h.report.accuracy
        );
    }
    Ok(())
}
