//! CSV writers for the result tables: classifier grids, per-feature means,
//! and the embedding comparison. The ablation table lives with the suite.

use std::io::Write;

use crate::class::ComplexityClass;
use crate::embed::LabelMode;
use crate::features::FeatureName;
use crate::learn::{EvalReport, GridRow};

/// Classes the features separate easily.
pub const SUBSET_EASY: [ComplexityClass; 3] = [
    ComplexityClass::O1,
    ComplexityClass::ON,
    ComplexityClass::ONSquare,
];
/// Classes the features struggle with.
pub const SUBSET_HARD: [ComplexityClass; 3] = [
    ComplexityClass::O1,
    ComplexityClass::OLogN,
    ComplexityClass::ONLogN,
];

/// Row order of the per-feature table.
pub const PER_FEATURE_ORDER: [FeatureName; 14] = [
    FeatureName::NumberOfIfs,
    FeatureName::NumberOfSwitches,
    FeatureName::NumberOfLoops,
    FeatureName::NumberOfBreaks,
    FeatureName::PriorityQueuePresent,
    FeatureName::SortPresent,
    FeatureName::HashSetPresent,
    FeatureName::HashMapPresent,
    FeatureName::RecursionPresent,
    FeatureName::NestedLoopDepth,
    FeatureName::NumberOfVariables,
    FeatureName::NumberOfMethods,
    FeatureName::NumberOfJumps,
    FeatureName::NumberOfStatements,
];

/// Metrics are already percentages.
fn pct(x: f64) -> String {
    format!("{x:.2}")
}

fn metric_cells(r: &EvalReport) -> [String; 3] {
    [
        pct(r.accuracy),
        pct(r.weighted_precision),
        pct(r.weighted_recall),
    ]
}

/// `Algorithm,Accuracy,Precision,Recall`, one row per algorithm in table order.
pub fn write_grid_csv<W: Write>(rows: &[GridRow], out: W) -> csv::Result<()> {
    let mut sorted: Vec<&GridRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.algorithm);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["Algorithm", "Accuracy", "Precision", "Recall"])?;
    for row in sorted {
        let [a, p, r] = metric_cells(&row.report);
        w.write_record([row.algorithm.title(), &a, &p, &r])?;
    }
    w.flush()?;
    Ok(())
}

/// `Feature,Mean Accuracy` in the per-feature table order; features absent
/// from `means` are left out.
pub fn write_per_feature_csv<W: Write>(means: &[(FeatureName, f64)], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["Feature", "Mean Accuracy"])?;
    for f in PER_FEATURE_ORDER {
        if let Some((_, m)) = means.iter().find(|(g, _)| *g == f) {
            w.write_record([f.title(), &pct(*m)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn representation_title(mode: LabelMode) -> &'static str {
    match mode {
        LabelMode::Concatenated => "Node Labels with concatenation",
        LabelMode::Selective => "Node Labels without concatenation",
    }
}

/// `AST Representation,Accuracy,Precision,Recall`, one row per label mode.
pub fn write_embedding_table_csv<W: Write>(
    rows: &[(LabelMode, EvalReport)],
    out: W,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["AST Representation", "Accuracy", "Precision", "Recall"])?;
    for (mode, report) in rows {
        let [a, p, r] = metric_cells(report);
        w.write_record([representation_title(*mode), &a, &p, &r])?;
    }
    w.flush()?;
    Ok(())
}

/// Features ranked by mean accuracy, best first (ties keep column order).
pub fn rank_features(means: &[(FeatureName, f64)]) -> Vec<(FeatureName, f64)> {
    let mut ranked = means.to_vec();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    ranked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learn::Algorithm;

    fn report(acc: f64) -> EvalReport {
        let mut cm = [[0u64; 5]; 5];
        cm[0][0] = acc as u64;
        cm[0][1] = 100 - cm[0][0];
        EvalReport::from_confusion(cm)
    }

    fn lines(buf: Vec<u8>) -> Vec<String> {
        String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(str::to_string)
            .collect()
    }

    #[test]
    fn grid_rows_follow_table_order() {
        let rows: Vec<GridRow> = Algorithm::ALL
            .iter()
            .rev()
            .map(|&a| GridRow {
                algorithm: a,
                report: report(50.0),
            })
            .collect();
        let mut buf = Vec::new();
        write_grid_csv(&rows, &mut buf).unwrap();
        let l = lines(buf);
        assert_eq!(l.len(), 9);
        assert_eq!(l[0], "Algorithm,Accuracy,Precision,Recall");
        assert!(l[1].starts_with("K-means,50.00,"), "{}", l[1]);
        assert!(l[8].starts_with("SVM,"));
    }

    #[test]
    fn per_feature_table_has_fourteen_rows_in_order() {
        let means: Vec<_> = FeatureName::ALL.iter().map(|&f| (f, 25.0)).collect();
        let mut buf = Vec::new();
        write_per_feature_csv(&means, &mut buf).unwrap();
        let l = lines(buf);
        assert_eq!(l.len(), 15);
        assert_eq!(l[1], "No. of ifs,25.00");
        assert_eq!(l[10], "Nested loop depth,25.00");
        assert_eq!(l[14], "No. of statements,25.00");
    }

    #[test]
    fn per_feature_order_is_a_permutation() {
        let mut order = PER_FEATURE_ORDER.to_vec();
        order.sort();
        assert_eq!(order, FeatureName::ALL.to_vec());
    }

    #[test]
    fn embedding_table_rows() {
        let rows = [
            (LabelMode::Concatenated, report(70.0)),
            (LabelMode::Selective, report(60.0)),
        ];
        let mut buf = Vec::new();
        write_embedding_table_csv(&rows, &mut buf).unwrap();
        let l = lines(buf);
        assert_eq!(l.len(), 3);
        assert!(l[1].starts_with("Node Labels with concatenation,70.00,"));
        assert!(l[2].starts_with("Node Labels without concatenation,60.00,"));
    }

    #[test]
    fn ranking_is_descending() {
        let r = rank_features(&[
            (FeatureName::NumberOfIfs, 0.3),
            (FeatureName::NestedLoopDepth, 0.6),
        ]);
        assert_eq!(r[0].0, FeatureName::NestedLoopDepth);
    }
}
