use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::confusion::{confusion_matrix, ConfusionMatrix};
use crate::error::{Error, Result};

/// Precision/recall/F1 of one facies class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassF1 {
    pub facies: u8,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Number of samples whose true class this is.
    pub support: usize,
    /// True when the class occurs in neither truth nor predictions; its
    /// scores are defined as 0.
    pub absent: bool,
}

/// Per-class and averaged F1 scores.
///
/// `macro_avg` excludes classes with zero support (absent from the truth);
/// `weighted` weights per-class F1 by support; `micro` pools counts
/// globally, which for single-label classification equals accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct F1Scores {
    pub per_class: Vec<ClassF1>,
    pub micro: f64,
    pub macro_avg: f64,
    pub weighted: f64,
}

/// Which F1 average a report aggregates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum F1Average {
    Weighted,
    Micro,
    Macro,
}

impl F1Average {
    pub fn of(self, scores: &F1Scores) -> f64 {
        match self {
            F1Average::Weighted => scores.weighted,
            F1Average::Micro => scores.micro,
            F1Average::Macro => scores.macro_avg,
        }
    }
}

impl fmt::Display for F1Average {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            F1Average::Weighted => "weighted",
            F1Average::Micro => "micro",
            F1Average::Macro => "macro",
        };
        f.write_str(name)
    }
}

impl FromStr for F1Average {
    type Err = Error;

    fn from_str(s: &str) -> Result<F1Average> {
        match s {
            "weighted" => Ok(F1Average::Weighted),
            "micro" => Ok(F1Average::Micro),
            "macro" => Ok(F1Average::Macro),
            other => Err(Error::Config(format!(
                "unknown F1 average {other:?} (expected weighted, micro, or macro)"
            ))),
        }
    }
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

/// Compute per-class and averaged F1 from a confusion matrix.
pub fn f1_from_confusion(cm: &ConfusionMatrix) -> F1Scores {
    let k = cm.dim();
    let mut per_class = Vec::with_capacity(k);
    let mut tp_sum = 0usize;
    let mut weighted_sum = 0.0;
    let mut macro_sum = 0.0;
    let mut macro_count = 0usize;
    let total = cm.total();

    for i in 0..k {
        let tp = cm.count(i, i);
        let support = cm.row_total(i);
        let predicted = cm.column_total(i);
        let precision = ratio(tp, predicted);
        let recall = ratio(tp, support);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        tp_sum += tp;
        weighted_sum += f1 * support as f64;
        if support > 0 {
            macro_sum += f1;
            macro_count += 1;
        }
        per_class.push(ClassF1 {
            facies: cm.class_order[i],
            precision,
            recall,
            f1,
            support,
            absent: support == 0 && predicted == 0,
        });
    }

    // Pooled counts: every sample contributes one prediction, so pooled
    // false positives equal pooled false negatives and micro F1 reduces to
    // the accuracy trace/total.
    let micro = ratio(tp_sum, total);
    F1Scores {
        per_class,
        micro,
        macro_avg: if macro_count == 0 { 0.0 } else { macro_sum / macro_count as f64 },
        weighted: if total == 0 { 0.0 } else { weighted_sum / total as f64 },
    }
}

/// F1 scores of parallel true/predicted facies code vectors.
pub fn f1_scores(true_labels: &[u8], predicted_labels: &[u8]) -> Result<F1Scores> {
    Ok(f1_from_confusion(&confusion_matrix(
        true_labels,
        predicted_labels,
    )?))
}
