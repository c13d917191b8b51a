//! Computes the fourteen features for Java files given on the command line,
//! or for one generated program of each class, then prints the per-class
//! distribution of nested loop depth over a synthetic corpus.
//!
//!     cargo run --example extract_features -- A.java B.java

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use runtime_complexity::ast::SourceUnit;
use runtime_complexity::features::{export_density, features_for_unit, FeatureName};
use runtime_complexity::synth::{java_corpus, java_program};
use runtime_complexity::ComplexityClass;

fn show(unit: &SourceUnit) {
    match features_for_unit(unit) {
        Ok(fv) => {
            println!("{}", unit.id);
            for f in FeatureName::ALL {
                println!("  {:<24} {}", f.title(), fv.get(f));
            }
        }
        Err(e) => println!("{}: parse error {e}", unit.id),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let paths: Vec<String> = std::env::args().skip(1).collect();
    if paths.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for class in ComplexityClass::ALL {
            show(&SourceUnit::labeled(
                format!("generated {}", class.big_o()),
                java_program(class, &mut rng),
                class,
            ));
        }
    } else {
        for p in paths {
            show(&SourceUnit::new(&p, std::fs::read_to_string(&p)?));
        }
    }

    let corpus: Vec<_> = java_corpus(40, 3)
        .iter()
        .map(|u| (features_for_unit(u).unwrap(), u.label.unwrap()))
        .collect();
    let table = export_density(&corpus, FeatureName::NestedLoopDepth)?;
    println!("\nnested loop depth by class (synthetic corpus):");
    for (class, pairs) in &table.per_class {
        let cells: Vec<String> = pairs
            .iter()
            .map(|(v, f)| format!("{v}: {:.0}%", 100.0 * f))
            .collect();
        println!("  {:<9} {}", class.big_o(), cells.join("  "));
    }
    Ok(())
}
