use serde::{Deserialize, Serialize};

use crate::data::facies::FaciesLabel;
use crate::error::{Error, Result};

/// Counts of (true facies, predicted facies) pairs over the fixed class
/// order 1..=9. Rows index the true class, columns the predicted one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub class_order: Vec<u8>,
    pub counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn dim(&self) -> usize {
        self.class_order.len()
    }

    /// Count at (true class index, predicted class index).
    pub fn count(&self, true_index: usize, predicted_index: usize) -> usize {
        self.counts[true_index][predicted_index]
    }

    /// Count looked up by facies codes.
    pub fn count_by_code(&self, true_code: u8, predicted_code: u8) -> Option<usize> {
        let i = self.class_order.iter().position(|&c| c == true_code)?;
        let j = self.class_order.iter().position(|&c| c == predicted_code)?;
        Some(self.counts[i][j])
    }

    pub fn total(&self) -> usize {
        self.counts.iter().map(|row| row.iter().sum::<usize>()).sum()
    }

    pub fn row_total(&self, true_index: usize) -> usize {
        self.counts[true_index].iter().sum()
    }

    pub fn column_total(&self, predicted_index: usize) -> usize {
        self.counts.iter().map(|row| row[predicted_index]).sum()
    }

    /// Diagonal sum (correct predictions).
    pub fn trace(&self) -> usize {
        (0..self.dim()).map(|i| self.counts[i][i]).sum()
    }
}

fn class_index(code: u8, position: usize) -> Result<usize> {
    FaciesLabel::from_code(code)
        .map(|f| f.code() as usize - 1)
        .ok_or(Error::InvalidRecord {
            row: position + 1,
            message: format!("label code {code} outside 1..=9"),
        })
}

/// Tally a confusion matrix from parallel true/predicted facies codes.
pub fn confusion_matrix(true_labels: &[u8], predicted_labels: &[u8]) -> Result<ConfusionMatrix> {
    if true_labels.len() != predicted_labels.len() {
        return Err(Error::LengthMismatch {
            left: true_labels.len(),
            right: predicted_labels.len(),
        });
    }
    if true_labels.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let k = FaciesLabel::ALL.len();
    let mut counts = vec![vec![0usize; k]; k];
    for (position, (&t, &p)) in true_labels.iter().zip(predicted_labels).enumerate() {
        let i = class_index(t, position)?;
        let j = class_index(p, position)?;
        counts[i][j] += 1;
    }
    Ok(ConfusionMatrix {
        class_order: FaciesLabel::ALL.map(|f| f.code()).to_vec(),
        counts,
    })
}

/// A confusion matrix with every nonzero row scaled to sum 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizedConfusion {
    pub class_order: Vec<u8>,
    pub rows: Vec<Vec<f64>>,
    /// True classes with no samples; their rows are all-zero, not rescaled.
    pub empty_rows: Vec<bool>,
}

/// Row-normalize a confusion matrix; all-zero rows stay zero and are
/// flagged.
pub fn normalize_confusion(cm: &ConfusionMatrix) -> NormalizedConfusion {
    let mut rows = Vec::with_capacity(cm.dim());
    let mut empty_rows = Vec::with_capacity(cm.dim());
    for i in 0..cm.dim() {
        let total = cm.row_total(i);
        empty_rows.push(total == 0);
        if total == 0 {
            rows.push(vec![0.0; cm.dim()]);
        } else {
            rows.push(
                cm.counts[i]
                    .iter()
                    .map(|&c| c as f64 / total as f64)
                    .collect(),
            );
        }
    }
    NormalizedConfusion {
        class_order: cm.class_order.clone(),
        rows,
        empty_rows,
    }
}
