//! Exhaustive brute-force oracle for exact greedy split finding.
//!
//! Feature values, gradients, and Hessians are drawn from dyadic grids
//! (multiples of 1/8) so every partial sum is exact in f64. The oracle can
//! then partition rows by a fresh `value < threshold` pass instead of
//! mirroring the library's sorted prefix accumulation, and agreement is
//! required bit for bit, tie-breaking included.

use facies_core::features::FeatureMatrix;
use facies_core::gbt::{find_best_split, GBTConfig};
use proptest::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
struct BruteSplit {
    feature_index: usize,
    threshold: f64,
    gain: f64,
    left_gradient: f64,
    left_hessian: f64,
    right_gradient: f64,
    right_hessian: f64,
}

fn brute_force_best_split(
    columns: &[Vec<f64>],
    rows: &[usize],
    feature_columns: &[usize],
    g: &[f64],
    h: &[f64],
    reg_lambda: f64,
    gamma: f64,
    min_child_weight: f64,
) -> Option<BruteSplit> {
    let score = |gs: f64, hs: f64| gs * gs / (hs + reg_lambda);
    let mut g_total = 0.0;
    let mut h_total = 0.0;
    for &r in rows {
        g_total += g[r];
        h_total += h[r];
    }
    let parent = score(g_total, h_total);

    let mut candidates: Vec<usize> = feature_columns.to_vec();
    candidates.sort_unstable();
    candidates.dedup();

    let mut best: Option<BruteSplit> = None;
    for &f in &candidates {
        let mut values: Vec<f64> = rows.iter().map(|&r| columns[f][r]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for pair in values.windows(2) {
            let threshold = (pair[0] + pair[1]) / 2.0;
            if !(threshold > pair[0]) {
                continue;
            }
            let mut left_gradient = 0.0;
            let mut left_hessian = 0.0;
            for &r in rows {
                if columns[f][r] < threshold {
                    left_gradient += g[r];
                    left_hessian += h[r];
                }
            }
            let right_gradient = g_total - left_gradient;
            let right_hessian = h_total - left_hessian;
            if left_hessian < min_child_weight || right_hessian < min_child_weight {
                continue;
            }
            let gain = 0.5
                * (score(left_gradient, left_hessian) + score(right_gradient, right_hessian)
                    - parent)
                - gamma;
            if gain > 0.0 && best.map_or(true, |b| gain > b.gain) {
                best = Some(BruteSplit {
                    feature_index: f,
                    threshold,
                    gain,
                    left_gradient,
                    left_hessian,
                    right_gradient,
                    right_hessian,
                });
            }
        }
    }
    best
}

fn matrix_from_columns(columns: &[Vec<f64>]) -> FeatureMatrix<f64> {
    let n = columns[0].len();
    let mut m = FeatureMatrix::new(
        vec![1u8; n],
        vec!["W".to_string(); n],
        (0..n).map(|i| i as f64).collect(),
    )
    .unwrap();
    for (j, col) in columns.iter().enumerate() {
        m.push_column(format!("f{j}"), col.clone()).unwrap();
    }
    m
}

#[derive(Debug, Clone)]
struct Case {
    columns: Vec<Vec<f64>>,
    g: Vec<f64>,
    h: Vec<f64>,
    rows: Vec<usize>,
    feature_columns: Vec<usize>,
    reg_lambda: f64,
    gamma: f64,
    min_child_weight: f64,
}

prop_compose! {
    fn case_strategy()(
        n_rows in 2usize..=64,
        n_features in 1usize..=8,
    )(
        // Narrow value grid so ties across rows and features are common.
        raw_columns in prop::collection::vec(
            prop::collection::vec(-8i32..=8, n_rows), n_features),
        raw_g in prop::collection::vec(-16i32..=16, n_rows),
        raw_h in prop::collection::vec(1i32..=32, n_rows),
        row_mask in prop::collection::vec(prop::bool::weighted(0.8), n_rows),
        feature_mask in prop::collection::vec(prop::bool::weighted(0.8), n_features),
        reg_lambda in prop::sample::select(vec![0.0, 0.5, 1.0, 2.0]),
        gamma in prop::sample::select(vec![0.0, 0.125, 0.5]),
        min_child_weight in prop::sample::select(vec![0.0, 0.25, 1.0, 2.0]),
        n_rows in Just(n_rows),
        n_features in Just(n_features),
    ) -> Case {
        let columns: Vec<Vec<f64>> = raw_columns
            .iter()
            .map(|col| col.iter().map(|&k| k as f64 / 8.0).collect())
            .collect();
        let g: Vec<f64> = raw_g.iter().map(|&k| k as f64 / 8.0).collect();
        let h: Vec<f64> = raw_h.iter().map(|&k| k as f64 / 8.0).collect();
        let mut rows: Vec<usize> = (0..n_rows).filter(|&i| row_mask[i]).collect();
        if rows.len() < 2 {
            rows = (0..n_rows).collect();
        }
        let mut feature_columns: Vec<usize> =
            (0..n_features).filter(|&j| feature_mask[j]).collect();
        if feature_columns.is_empty() {
            feature_columns = (0..n_features).collect();
        }
        Case { columns, g, h, rows, feature_columns, reg_lambda, gamma, min_child_weight }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn library_split_matches_brute_force(case in case_strategy()) {
        let matrix = matrix_from_columns(&case.columns);
        let config = GBTConfig {
            reg_lambda: case.reg_lambda,
            gamma: case.gamma,
            min_child_weight: case.min_child_weight,
            ..GBTConfig::default()
        };
        let got = find_best_split(
            &matrix,
            &case.rows,
            &case.feature_columns,
            &case.g,
            &case.h,
            &config,
        )
        .map(|s| BruteSplit {
            feature_index: s.feature_index,
            threshold: s.threshold,
            gain: s.gain,
            left_gradient: s.left_gradient,
            left_hessian: s.left_hessian,
            right_gradient: s.right_gradient,
            right_hessian: s.right_hessian,
        });
        let expected = brute_force_best_split(
            &case.columns,
            &case.rows,
            &case.feature_columns,
            &case.g,
            &case.h,
            case.reg_lambda,
            case.gamma,
            case.min_child_weight,
        );
        // Dyadic inputs make both sides exact, so compare with plain
        // equality; any tie-break divergence shows up as a field mismatch.
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn brute_force_agrees_on_handmade_tie() {
    // Two identical columns and symmetric gradients: gains tie across
    // features and thresholds, exercising both tie-break rules at once.
    let col = vec![0.0, 0.0, 1.0, 1.0, 2.0, 2.0];
    let columns = vec![col.clone(), col];
    let g = vec![4.0, 4.0, 0.0, 0.0, -4.0, -4.0];
    let h = vec![1.0; 6];
    let rows: Vec<usize> = (0..6).collect();
    let config = GBTConfig {
        min_child_weight: 0.0,
        ..GBTConfig::<f64>::default()
    };
    let matrix = matrix_from_columns(&columns);
    let got = find_best_split(&matrix, &rows, &[0, 1], &g, &h, &config).unwrap();
    let expected =
        brute_force_best_split(&columns, &rows, &[0, 1], &g, &h, 1.0, 0.0, 0.0).unwrap();
    assert_eq!(got.feature_index, expected.feature_index);
    assert_eq!(got.feature_index, 0);
    assert_eq!(got.threshold, expected.threshold);
    assert_eq!(got.gain, expected.gain);
}
