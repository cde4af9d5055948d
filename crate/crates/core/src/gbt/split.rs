use super::config::GBTConfig;
use crate::features::FeatureMatrix;
use crate::scalar::Scalar;

/// A chosen split: rows with `value < threshold` go left, the rest right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitDecision<S> {
    pub feature_index: usize,
    pub threshold: S,
    pub gain: S,
    pub left_gradient: S,
    pub left_hessian: S,
    pub right_gradient: S,
    pub right_hessian: S,
}

/// Optimal leaf weight w* = −G/(H+λ) for gradient sum G and Hessian sum H.
pub fn leaf_weight<S: Scalar>(g_sum: S, h_sum: S, reg_lambda: S) -> S {
    let denominator = h_sum + reg_lambda;
    if denominator > S::zero() {
        -g_sum / denominator
    } else {
        S::zero()
    }
}

fn structure_score<S: Scalar>(g_sum: S, h_sum: S, reg_lambda: S) -> S {
    g_sum * g_sum / (h_sum + reg_lambda)
}

pub(crate) struct FeatureScan<S> {
    pub threshold: S,
    pub gain: S,
    pub left_gradient: S,
    pub left_hessian: S,
}

/// Scan one feature's candidate thresholds.
///
/// `sorted_rows` must hold the node's rows ordered by (feature value, row
/// index) ascending; candidate thresholds are midpoints between consecutive
/// distinct values. Returns the best admissible candidate; for equal gains
/// the lowest threshold wins (strict-improvement replacement during the
/// ascending scan).
pub(crate) fn scan_feature<S: Scalar>(
    sorted_rows: &[u32],
    column: &[S],
    g: &[S],
    h: &[S],
    g_total: S,
    h_total: S,
    config: &GBTConfig<S>,
) -> Option<FeatureScan<S>> {
    if sorted_rows.len() < 2 {
        return None;
    }
    let half = S::from_f64_lossy(0.5);
    let two = S::from_f64_lossy(2.0);
    let parent_score = structure_score(g_total, h_total, config.reg_lambda);

    let mut best: Option<FeatureScan<S>> = None;
    let mut left_gradient = S::zero();
    let mut left_hessian = S::zero();
    for w in 0..sorted_rows.len() - 1 {
        let row = sorted_rows[w] as usize;
        left_gradient += g[row];
        left_hessian += h[row];
        let value = column[row];
        let next_value = column[sorted_rows[w + 1] as usize];
        if !(next_value > value) {
            continue;
        }
        let threshold = (value + next_value) / two;
        // Guard against midpoints that round onto the left value and would
        // misroute it; adjacent representable values cannot be separated.
        if !(threshold > value) {
            continue;
        }
        let right_gradient = g_total - left_gradient;
        let right_hessian = h_total - left_hessian;
        if left_hessian < config.min_child_weight || right_hessian < config.min_child_weight {
            continue;
        }
        let gain = half
            * (structure_score(left_gradient, left_hessian, config.reg_lambda)
                + structure_score(right_gradient, right_hessian, config.reg_lambda)
                - parent_score)
            - config.gamma;
        if gain > S::zero() && best.as_ref().map_or(true, |b| gain > b.gain) {
            best = Some(FeatureScan {
                threshold,
                gain,
                left_gradient,
                left_hessian,
            });
        }
    }
    best
}

/// Node totals summed in ascending row order (the order every caller uses,
/// keeping gains bit-identical across split-search strategies).
pub(crate) fn node_totals<S: Scalar>(rows: &[u32], g: &[S], h: &[S]) -> (S, S) {
    let mut g_total = S::zero();
    let mut h_total = S::zero();
    for &r in rows {
        g_total += g[r as usize];
        h_total += h[r as usize];
    }
    (g_total, h_total)
}

/// Exact greedy split search over the given rows and candidate columns.
///
/// Thresholds are midpoints between consecutive distinct sorted values of
/// each candidate feature. The returned split maximizes the regularized gain
///
/// ```text
/// gain = ½ [ G_L²/(H_L+λ) + G_R²/(H_R+λ) − (G_L+G_R)²/(H_L+H_R+λ) ] − γ
/// ```
///
/// subject to H_L ≥ min_child_weight, H_R ≥ min_child_weight, and gain > 0.
/// Ties break toward the lower feature index, then the lower threshold.
/// `g` and `h` are indexed by row.
pub fn find_best_split<S: Scalar>(
    features: &FeatureMatrix<S>,
    rows: &[usize],
    feature_columns: &[usize],
    g: &[S],
    h: &[S],
    config: &GBTConfig<S>,
) -> Option<SplitDecision<S>> {
    if rows.is_empty() {
        return None;
    }
    let mut rows32: Vec<u32> = rows.iter().map(|&r| r as u32).collect();
    rows32.sort_unstable();
    let mut columns: Vec<usize> = feature_columns.to_vec();
    columns.sort_unstable();
    columns.dedup();

    let (g_total, h_total) = node_totals(&rows32, g, h);

    let mut best: Option<SplitDecision<S>> = None;
    let mut sorted = rows32.clone();
    for &j in &columns {
        let column = features.column(j);
        sorted.copy_from_slice(&rows32);
        sorted.sort_by(|&a, &b| {
            column[a as usize]
                .partial_cmp(&column[b as usize])
                .expect("feature values are finite")
                .then(a.cmp(&b))
        });
        if let Some(scan) = scan_feature(&sorted, column, g, h, g_total, h_total, config) {
            if best.as_ref().map_or(true, |b| scan.gain > b.gain) {
                best = Some(SplitDecision {
                    feature_index: j,
                    threshold: scan.threshold,
                    gain: scan.gain,
                    left_gradient: scan.left_gradient,
                    left_hessian: scan.left_hessian,
                    right_gradient: g_total - scan.left_gradient,
                    right_hessian: h_total - scan.left_hessian,
                });
            }
        }
    }
    best
}
