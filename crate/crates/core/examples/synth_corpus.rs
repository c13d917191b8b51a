//! Writes a labeled synthetic corpus that the `rtc` commands can consume.
//!
//!     cargo run --example synth_corpus -- /tmp/corpus 40
//!     cargo run --bin rtc -- ingest --corpus /tmp/corpus

use std::path::PathBuf;

use runtime_complexity::corpus::write_corpus;
use runtime_complexity::synth::java_corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let root = PathBuf::from(args.next().unwrap_or_else(|| "synthetic-corpus".into()));
    let per_class: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(40);
    let units = java_corpus(per_class, 7);
    let labels = write_corpus(&root, &units)?;
    println!(
        "wrote {} programs; labels in {}",
        units.len(),
        labels.display()
    );
    Ok(())
}
