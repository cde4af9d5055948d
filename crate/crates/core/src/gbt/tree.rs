use serde::{Deserialize, Serialize};

use super::config::GBTConfig;
use super::split::{find_best_split, leaf_weight, node_totals, scan_feature, SplitDecision};
use crate::features::FeatureMatrix;
use crate::scalar::Scalar;

/// A regression tree node. Internal nodes route `value < threshold` to the
/// left child and `value ≥ threshold` to the right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
#[serde(bound(deserialize = "S: Scalar"))]
pub enum TreeNode<S> {
    Internal {
        feature_index: usize,
        threshold: S,
        left: Box<TreeNode<S>>,
        right: Box<TreeNode<S>>,
    },
    Leaf {
        weight: S,
    },
}

impl<S: Scalar> TreeNode<S> {
    /// Raw (unshrunk) prediction for one row of the matrix.
    pub fn predict_row(&self, features: &FeatureMatrix<S>, row: usize) -> S {
        match self {
            TreeNode::Leaf { weight } => *weight,
            TreeNode::Internal {
                feature_index,
                threshold,
                left,
                right,
            } => {
                if features.value(row, *feature_index) < *threshold {
                    left.predict_row(features, row)
                } else {
                    right.predict_row(features, row)
                }
            }
        }
    }

    /// Raw prediction for a dense row vector in column order.
    pub fn predict_values(&self, values: &[S]) -> S {
        match self {
            TreeNode::Leaf { weight } => *weight,
            TreeNode::Internal {
                feature_index,
                threshold,
                left,
                right,
            } => {
                if values[*feature_index] < *threshold {
                    left.predict_values(values)
                } else {
                    right.predict_values(values)
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Internal { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Internal { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Largest feature index referenced anywhere in the tree.
    pub fn max_feature_index(&self) -> Option<usize> {
        match self {
            TreeNode::Leaf { .. } => None,
            TreeNode::Internal {
                feature_index,
                left,
                right,
                ..
            } => {
                let mut m = *feature_index;
                if let Some(l) = left.max_feature_index() {
                    m = m.max(l);
                }
                if let Some(r) = right.max_feature_index() {
                    m = m.max(r);
                }
                Some(m)
            }
        }
    }
}

/// Grow one regression tree by recursive greedy splitting.
///
/// Reference implementation over the public [`find_best_split`]; training
/// uses the presorted builder below, which produces identical trees.
pub fn build_tree<S: Scalar>(
    features: &FeatureMatrix<S>,
    rows: &[usize],
    g: &[S],
    h: &[S],
    config: &GBTConfig<S>,
    column_subset: &[usize],
) -> TreeNode<S> {
    let mut rows32: Vec<u32> = rows.iter().map(|&r| r as u32).collect();
    rows32.sort_unstable();
    grow_reference(features, &rows32, g, h, config, column_subset, 0)
}

fn grow_reference<S: Scalar>(
    features: &FeatureMatrix<S>,
    rows: &[u32],
    g: &[S],
    h: &[S],
    config: &GBTConfig<S>,
    column_subset: &[usize],
    depth: usize,
) -> TreeNode<S> {
    let (g_total, h_total) = node_totals(rows, g, h);
    let leaf = |g_total, h_total| TreeNode::Leaf {
        weight: leaf_weight(g_total, h_total, config.reg_lambda),
    };
    if depth >= config.max_depth || rows.len() < 2 {
        return leaf(g_total, h_total);
    }
    let rows_usize: Vec<usize> = rows.iter().map(|&r| r as usize).collect();
    let Some(split) = find_best_split(features, &rows_usize, column_subset, g, h, config) else {
        return leaf(g_total, h_total);
    };
    let (left_rows, right_rows) = partition(features, rows, &split);
    TreeNode::Internal {
        feature_index: split.feature_index,
        threshold: split.threshold,
        left: Box::new(grow_reference(
            features, &left_rows, g, h, config, column_subset, depth + 1,
        )),
        right: Box::new(grow_reference(
            features, &right_rows, g, h, config, column_subset, depth + 1,
        )),
    }
}

fn partition<S: Scalar>(
    features: &FeatureMatrix<S>,
    rows: &[u32],
    split: &SplitDecision<S>,
) -> (Vec<u32>, Vec<u32>) {
    let column = features.column(split.feature_index);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &r in rows {
        if column[r as usize] < split.threshold {
            left.push(r);
        } else {
            right.push(r);
        }
    }
    (left, right)
}

/// Tree builder reusing per-column presorted row orders across nodes.
///
/// Produces trees bit-identical to [`build_tree`]: filtering a presorted
/// order by node membership yields the same (value, row)-sorted sequence
/// that the reference path obtains by sorting each node's rows, and node
/// totals are summed in ascending row order on both paths.
pub(crate) struct PresortedBuilder<'a, S: Scalar> {
    features: &'a FeatureMatrix<S>,
    orders: &'a [Vec<u32>],
    config: &'a GBTConfig<S>,
    mark: Vec<u32>,
    next_id: u32,
    scratch: Vec<u32>,
}

impl<'a, S: Scalar> PresortedBuilder<'a, S> {
    pub fn new(
        features: &'a FeatureMatrix<S>,
        orders: &'a [Vec<u32>],
        config: &'a GBTConfig<S>,
    ) -> Self {
        PresortedBuilder {
            features,
            orders,
            config,
            mark: vec![0; features.n_rows()],
            next_id: 0,
            scratch: Vec::with_capacity(features.n_rows()),
        }
    }

    /// Sort row indices of every column by (value, row index) once; reused
    /// for all trees trained on the same matrix.
    pub fn presort(features: &FeatureMatrix<S>) -> Vec<Vec<u32>> {
        (0..features.n_cols())
            .map(|j| {
                let column = features.column(j);
                let mut order: Vec<u32> = (0..features.n_rows() as u32).collect();
                order.sort_by(|&a, &b| {
                    column[a as usize]
                        .partial_cmp(&column[b as usize])
                        .expect("feature values are finite")
                        .then(a.cmp(&b))
                });
                order
            })
            .collect()
    }

    pub fn grow(&mut self, rows: &[u32], g: &[S], h: &[S], columns: &[usize]) -> TreeNode<S> {
        self.grow_at(rows, g, h, columns, 0)
    }

    fn grow_at(
        &mut self,
        rows: &[u32],
        g: &[S],
        h: &[S],
        columns: &[usize],
        depth: usize,
    ) -> TreeNode<S> {
        let (g_total, h_total) = node_totals(rows, g, h);
        if depth >= self.config.max_depth || rows.len() < 2 {
            return TreeNode::Leaf {
                weight: leaf_weight(g_total, h_total, self.config.reg_lambda),
            };
        }

        self.next_id += 1;
        let id = self.next_id;
        for &r in rows {
            self.mark[r as usize] = id;
        }

        let mut best: Option<SplitDecision<S>> = None;
        for &j in columns {
            let column = self.features.column(j);
            let mut scratch = std::mem::take(&mut self.scratch);
            scratch.clear();
            scratch.extend(self.orders[j].iter().copied().filter(|&r| self.mark[r as usize] == id));
            let scan = scan_feature(&scratch, column, g, h, g_total, h_total, self.config);
            self.scratch = scratch;
            if let Some(scan) = scan {
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

        let Some(split) = best else {
            return TreeNode::Leaf {
                weight: leaf_weight(g_total, h_total, self.config.reg_lambda),
            };
        };
        let (left_rows, right_rows) = partition(self.features, rows, &split);
        TreeNode::Internal {
            feature_index: split.feature_index,
            threshold: split.threshold,
            left: Box::new(self.grow_at(&left_rows, g, h, columns, depth + 1)),
            right: Box::new(self.grow_at(&right_rows, g, h, columns, depth + 1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(columns: &[&[f64]]) -> FeatureMatrix<f64> {
        let n = columns[0].len();
        let mut m = FeatureMatrix::new(
            vec![1u8; n],
            vec!["W".to_string(); n],
            (0..n).map(|i| i as f64).collect(),
        )
        .unwrap();
        for (j, col) in columns.iter().enumerate() {
            m.push_column(format!("f{j}"), col.to_vec()).unwrap();
        }
        m
    }

    fn loose_config(max_depth: usize) -> GBTConfig<f64> {
        GBTConfig {
            max_depth,
            min_child_weight: 0.0,
            ..GBTConfig::default()
        }
    }

    #[test]
    fn unsplittable_root_is_closed_form_leaf() {
        let m = matrix(&[&[5.0, 5.0, 5.0]]);
        let g = [3.0, 2.0, 1.0];
        let h = [1.0, 1.0, 1.0];
        let config = loose_config(3);
        let tree = build_tree(&m, &[0, 1, 2], &g, &h, &config, &[0]);
        match tree {
            TreeNode::Leaf { weight } => {
                assert!((weight - (-6.0 / 4.0)).abs() < 1e-15)
            }
            other => panic!("expected leaf, got {other:?}"),
        }
    }

    #[test]
    fn pure_node_weight_is_zero() {
        let m = matrix(&[&[1.0, 2.0]]);
        let g = [0.0, 0.0];
        let h = [1.0, 1.0];
        let tree = build_tree(&m, &[0, 1], &g, &h, &loose_config(2), &[0]);
        match tree {
            TreeNode::Leaf { weight } => assert_eq!(weight, 0.0),
            // A zero-gradient node never yields positive gain, so the root
            // must be a leaf.
            other => panic!("expected leaf, got {other:?}"),
        }
    }

    #[test]
    fn depth_limit_is_respected() {
        let col: Vec<f64> = (0..16).map(|i| i as f64).collect();
        let g: Vec<f64> = (0..16).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let h = vec![1.0; 16];
        let m = matrix(&[&col]);
        let rows: Vec<usize> = (0..16).collect();
        for depth in 1..=4 {
            let tree = build_tree(&m, &rows, &g, &h, &loose_config(depth), &[0]);
            assert!(tree.depth() <= depth, "depth {} > {depth}", tree.depth());
        }
    }

    #[test]
    fn presorted_builder_matches_reference_builder() {
        // Dyadic values keep all sums exact, so both paths must agree bit
        // for bit even through tie-breaking.
        let n = 32;
        let mut state = 11u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 17) as f64 / 8.0
        };
        let cols: Vec<Vec<f64>> = (0..4).map(|_| (0..n).map(|_| next()).collect()).collect();
        let col_refs: Vec<&[f64]> = cols.iter().map(|c| c.as_slice()).collect();
        let m = matrix(&col_refs);
        let g: Vec<f64> = (0..n).map(|_| next() - 1.0).collect();
        let h: Vec<f64> = (0..n).map(|_| next() + 0.125).collect();
        let rows: Vec<usize> = (0..n).collect();
        let rows32: Vec<u32> = (0..n as u32).collect();

        for max_depth in [1, 2, 3, 4] {
            let config = GBTConfig {
                max_depth,
                min_child_weight: 0.25,
                ..GBTConfig::default()
            };
            let reference = build_tree(&m, &rows, &g, &h, &config, &[0, 1, 2, 3]);
            let orders = PresortedBuilder::presort(&m);
            let mut builder = PresortedBuilder::new(&m, &orders, &config);
            let fast = builder.grow(&rows32, &g, &h, &[0, 1, 2, 3]);
            assert_eq!(reference, fast, "max_depth {max_depth}");
        }
    }

    #[test]
    fn tree_round_trips_through_json() {
        let tree: TreeNode<f64> = TreeNode::Internal {
            feature_index: 2,
            threshold: 0.75,
            left: Box::new(TreeNode::Leaf { weight: -0.5 }),
            right: Box::new(TreeNode::Internal {
                feature_index: 0,
                threshold: -1.25,
                left: Box::new(TreeNode::Leaf { weight: 0.25 }),
                right: Box::new(TreeNode::Leaf { weight: 1.5 }),
            }),
        };
        let text = serde_json::to_string(&tree).unwrap();
        let back: TreeNode<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(tree, back);
    }

    #[test]
    fn prediction_is_consistent_between_row_and_values() {
        let m = matrix(&[&[1.0, 4.0], &[2.0, -2.0]]);
        let g = [1.0, -1.0];
        let h = [1.0, 1.0];
        let tree = build_tree(&m, &[0, 1], &g, &h, &loose_config(2), &[0, 1]);
        for i in 0..2 {
            assert_eq!(tree.predict_row(&m, i), tree.predict_values(&m.row(i)));
        }
    }
}
