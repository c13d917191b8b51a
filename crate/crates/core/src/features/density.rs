use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{FeatureName, FeatureVector};
use crate::class::ComplexityClass;

#[derive(Debug, thiserror::Error)]
pub enum DensityError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("class `{0}` has no samples")]
    EmptyClass(ComplexityClass),
}

/// Per-class discrete distribution of one feature's values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityTable {
    pub feature: FeatureName,
    /// Class → ascending (value, relative frequency) pairs.
    pub per_class: BTreeMap<ComplexityClass, Vec<(u32, f64)>>,
}

impl DensityTable {
    pub fn frequency(&self, class: ComplexityClass, value: u32) -> f64 {
        self.per_class
            .get(&class)
            .and_then(|pairs| pairs.iter().find(|(v, _)| *v == value))
            .map_or(0.0, |(_, f)| *f)
    }

    /// Value with the highest frequency for `class` (lowest value on ties).
    pub fn peak(&self, class: ComplexityClass) -> Option<u32> {
        let pairs = self.per_class.get(&class)?;
        pairs
            .iter()
            .fold(None, |best: Option<(u32, f64)>, &(v, f)| match best {
                Some((_, bf)) if bf >= f => best,
                _ => Some((v, f)),
            })
            .map(|(v, _)| v)
    }
}

/// Histogram for every class present in `corpus`.
pub fn export_density(
    corpus: &[(FeatureVector, ComplexityClass)],
    feature: FeatureName,
) -> Result<DensityTable, DensityError> {
    let mut classes: Vec<ComplexityClass> = corpus.iter().map(|(_, c)| *c).collect();
    classes.sort();
    classes.dedup();
    export_density_for(corpus, feature, &classes)
}

/// Histogram for the requested classes; each must have at least one sample.
pub fn export_density_for(
    corpus: &[(FeatureVector, ComplexityClass)],
    feature: FeatureName,
    classes: &[ComplexityClass],
) -> Result<DensityTable, DensityError> {
    if corpus.is_empty() {
        return Err(DensityError::EmptyCorpus);
    }
    let mut per_class = BTreeMap::new();
    for &class in classes {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        let mut total = 0usize;
        for (fv, _) in corpus.iter().filter(|(_, c)| *c == class) {
            *counts.entry(fv.get(feature)).or_default() += 1;
            total += 1;
        }
        if total == 0 {
            return Err(DensityError::EmptyClass(class));
        }
        let pairs = counts
            .into_iter()
            .map(|(v, n)| (v, n as f64 / total as f64))
            .collect();
        per_class.insert(class, pairs);
    }
    Ok(DensityTable { feature, per_class })
}

/// Writes `feature,class,value,frequency` rows for each table.
pub fn write_density_csv<W: Write>(tables: &[DensityTable], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["feature", "class", "value", "frequency"])?;
    for table in tables {
        for (class, pairs) in &table.per_class {
            for (value, freq) in pairs {
                w.write_record([
                    table.feature.as_str(),
                    class.as_str(),
                    &value.to_string(),
                    &format!("{freq:.6}"),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
