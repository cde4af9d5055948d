use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Softmax of one row of raw scores with max subtraction for stability.
pub fn softmax_row<S: Scalar>(scores: &[S]) -> Vec<S> {
    let max = scores
        .iter()
        .copied()
        .fold(S::neg_infinity(), |a, b| if b > a { b } else { a });
    let exps: Vec<S> = scores.iter().map(|&s| (s - max).exp()).collect();
    let total: S = exps.iter().copied().sum();
    exps.into_iter().map(|e| e / total).collect()
}

fn check_scores<S: Scalar>(labels: &[usize], raw_scores: &[S], n_classes: usize) -> Result<()> {
    if raw_scores.len() != labels.len() * n_classes {
        return Err(Error::LengthMismatch {
            left: raw_scores.len(),
            right: labels.len() * n_classes,
        });
    }
    if let Some(&bad) = labels.iter().find(|&&l| l >= n_classes) {
        return Err(Error::TooFewClasses {
            n_classes,
            max_code: bad.min(u8::MAX as usize) as u8,
        });
    }
    for (i, row) in raw_scores.chunks_exact(n_classes).enumerate() {
        for (k, &s) in row.iter().enumerate() {
            if !s.is_finite() {
                return Err(Error::NonFiniteScore { row: i, class: k });
            }
        }
    }
    Ok(())
}

/// First and second derivatives of the summed softmax cross-entropy loss
/// with respect to the raw scores.
///
/// `labels` hold zero-based class indices; `raw_scores` is row-major n×K.
/// Per row, g = p − onehot(label) and h = p·(1−p) with p the softmax
/// probabilities. Both outputs are row-major n×K.
pub fn softmax_grad_hess<S: Scalar>(
    labels: &[usize],
    raw_scores: &[S],
    n_classes: usize,
) -> Result<(Vec<S>, Vec<S>)> {
    check_scores(labels, raw_scores, n_classes)?;
    let mut g = Vec::with_capacity(raw_scores.len());
    let mut h = Vec::with_capacity(raw_scores.len());
    for (i, row) in raw_scores.chunks_exact(n_classes).enumerate() {
        let p = softmax_row(row);
        for (k, &pk) in p.iter().enumerate() {
            let target = if labels[i] == k { S::one() } else { S::zero() };
            g.push(pk - target);
            h.push(pk * (S::one() - pk));
        }
    }
    Ok((g, h))
}

/// Mean softmax cross-entropy −log p(label) of row-major raw scores.
pub fn cross_entropy_loss<S: Scalar>(
    labels: &[usize],
    raw_scores: &[S],
    n_classes: usize,
) -> Result<S> {
    check_scores(labels, raw_scores, n_classes)?;
    if labels.is_empty() {
        return Err(Error::EmptyFeatureMatrix);
    }
    let mut total = S::zero();
    for (i, row) in raw_scores.chunks_exact(n_classes).enumerate() {
        let max = row
            .iter()
            .copied()
            .fold(S::neg_infinity(), |a, b| if b > a { b } else { a });
        let log_sum: S = row.iter().map(|&s| (s - max).exp()).sum::<S>().ln();
        total += -(row[labels[i]] - max - log_sum);
    }
    Ok(total / S::from_f64_lossy(labels.len() as f64))
}
