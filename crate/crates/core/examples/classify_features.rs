//! Trains all eight classifiers on features of a synthetic corpus, prints
//! the accuracy table and a confusion matrix, then saves the random forest,
//! reloads it, and classifies a new program.

use runtime_complexity::features::features_for_unit;
use runtime_complexity::learn::{
    evaluate, load_model, run_grid, save_model, train, Algorithm, ExperimentConfig,
};
use runtime_complexity::pipeline::feature_samples;
use runtime_complexity::report::write_grid_csv;
use runtime_complexity::synth::java_corpus;
use runtime_complexity::ComplexityClass;

const NEW_PROGRAM: &str = r#"
import java.util.*;
public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int[] a = new int[n];
        for (int i = 0; i < n; i++) a[i] = sc.nextInt();
        Arrays.sort(a);
        System.out.println(a[n / 2]);
    }
}
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples = feature_samples(&java_corpus(40, 21)).samples;
    let cfg = ExperimentConfig::default();
    let split = cfg.split(&samples)?;
    let rows = run_grid(&split, &cfg)?;
    write_grid_csv(&rows, std::io::stdout())?;

    let forest = train(&cfg.spec(Algorithm::RandomForest), &split.train)?;
    let report = evaluate(&forest, &split.test)?;
    println!("\nrandom forest confusion matrix (rows: truth, columns: predicted)");
    for (class, row) in ComplexityClass::ALL.iter().zip(report.confusion_matrix) {
        println!("  {:<9} {row:?}", class.big_o());
    }

    let mut blob = Vec::new();
    save_model(&forest, &mut blob)?;
    let reloaded = load_model(blob.as_slice())?;
    let unit = runtime_complexity::ast::SourceUnit::new("new", NEW_PROGRAM);
    let x = features_for_unit(&unit)?.to_f64();
    println!(
        "\nmodel blob {} bytes; new program predicted {}",
        blob.len(),
        reloaded.predict(&x)?.big_o()
    );
    Ok(())
}
