use serde::{Deserialize, Serialize};

use super::{LearnError, Sample, TrainedModel};
use crate::class::ComplexityClass;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: ComplexityClass,
    /// Percent; 0 when nothing was predicted as this class.
    pub precision: f64,
    /// Percent; 0 when the class has no test samples.
    pub recall: f64,
    pub support: u64,
}

/// Test-set scores. Percentages are in `[0, 100]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub weighted_precision: f64,
    pub weighted_recall: f64,
    /// Rows are true classes, columns predicted classes, both in `ComplexityClass::ALL` order.
    pub confusion_matrix: [[u64; 5]; 5],
    pub per_class: Vec<ClassMetrics>,
}

impl EvalReport {
    pub fn from_confusion(confusion_matrix: [[u64; 5]; 5]) -> Self {
        let total: u64 = confusion_matrix.iter().flatten().sum();
        let trace: u64 = (0..5).map(|i| confusion_matrix[i][i]).sum();
        let pct = |num: u64, den: u64| {
            if den == 0 {
                0.0
            } else {
                100.0 * num as f64 / den as f64
            }
        };

        let mut per_class = Vec::new();
        let mut weighted_precision = 0.0;
        for (i, class) in ComplexityClass::ALL.into_iter().enumerate() {
            let support: u64 = confusion_matrix[i].iter().sum();
            let predicted: u64 = (0..5).map(|r| confusion_matrix[r][i]).sum();
            let tp = confusion_matrix[i][i];
            let precision = pct(tp, predicted);
            if support > 0 {
                weighted_precision += precision * support as f64;
                per_class.push(ClassMetrics {
                    class,
                    precision,
                    recall: pct(tp, support),
                    support,
                });
            } else if predicted > 0 {
                per_class.push(ClassMetrics {
                    class,
                    precision,
                    recall: 0.0,
                    support,
                });
            }
        }
        EvalReport {
            accuracy: pct(trace, total),
            weighted_precision: if total == 0 {
                0.0
            } else {
                weighted_precision / total as f64
            },
            // Σ_c (n_c / N) · tp_c / n_c collapses to Σ tp / N.
            weighted_recall: pct(trace, total),
            confusion_matrix,
            per_class,
        }
    }

    pub fn from_predictions(truth: &[ComplexityClass], predicted: &[ComplexityClass]) -> Self {
        let mut m = [[0u64; 5]; 5];
        for (t, p) in truth.iter().zip(predicted) {
            m[t.index()][p.index()] += 1;
        }
        Self::from_confusion(m)
    }
}

pub fn evaluate(model: &TrainedModel, test: &[Sample]) -> Result<EvalReport, LearnError> {
    if test.is_empty() {
        return Err(LearnError::EmptyData);
    }
    let predicted = model.predict_all(test)?;
    let truth: Vec<ComplexityClass> = test.iter().map(|s| s.label).collect();
    Ok(EvalReport::from_predictions(&truth, &predicted))
}
