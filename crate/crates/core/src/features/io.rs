use std::io::{Read, Write};

use super::{FeatureName, FeatureVector};
use crate::class::ComplexityClass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureRow {
    pub id: String,
    pub features: FeatureVector,
    pub label: Option<ComplexityClass>,
}

/// Header: `id`, the fourteen feature names, `label`.
pub fn write_feature_csv<W: Write>(rows: &[FeatureRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["id"];
    header.extend(FeatureName::ALL.iter().map(|f| f.as_str()));
    header.push("label");
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![row.id.clone()];
        record.extend(row.features.to_array().iter().map(u32::to_string));
        record.push(
            row.label
                .map(|l| l.as_str().to_string())
                .unwrap_or_default(),
        );
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_feature_csv<R: Read>(input: R) -> Result<Vec<FeatureRow>, String> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(|e| e.to_string())?.clone();
    let expected: Vec<&str> = std::iter::once("id")
        .chain(FeatureName::ALL.iter().map(|f| f.as_str()))
        .chain(std::iter::once("label"))
        .collect();
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(format!("unexpected feature CSV header: {headers:?}"));
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| e.to_string())?;
        let mut values = [0u32; 14];
        for (i, v) in values.iter_mut().enumerate() {
            *v = record[i + 1]
                .parse()
                .map_err(|e| format!("bad value `{}`: {e}", &record[i + 1]))?;
        }
        let label = match &record[15] {
            "" => None,
            s => Some(
                s.parse()
                    .map_err(|e: crate::class::UnknownLabel| e.to_string())?,
            ),
        };
        rows.push(FeatureRow {
            id: record[0].to_string(),
            features: FeatureVector::from_array(values),
            label,
        });
    }
    Ok(rows)
}
