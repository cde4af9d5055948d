//! Finite-difference oracle for the softmax gradient and Hessian.
//!
//! The loss here is written from the definition (summed negative log
//! likelihood with its own max-subtracted softmax) so the analytic
//! `softmax_grad_hess` output is checked against something it shares no code
//! with. Scores are bounded in [-2, 2], which keeps every probability far
//! enough from 0 and 1 that central differences stay well conditioned.

use facies_core::gbt::{cross_entropy_loss, softmax_grad_hess};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sum over rows of −ln p(y_i), independent of the library implementation.
fn nll_sum(labels: &[usize], raw: &[f64], n_classes: usize) -> f64 {
    let mut total = 0.0;
    for (i, &y) in labels.iter().enumerate() {
        let row = &raw[i * n_classes..(i + 1) * n_classes];
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let denom: f64 = row.iter().map(|&s| (s - max).exp()).sum();
        total -= (row[y] - max) - denom.ln();
    }
    total
}

struct Instance {
    labels: Vec<usize>,
    raw: Vec<f64>,
    n_classes: usize,
}

fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(1..=20);
    let n_classes = rng.gen_range(2..=9);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n_classes)).collect();
    let raw: Vec<f64> = (0..n * n_classes).map(|_| rng.gen_range(-2.0..2.0)).collect();
    Instance { labels, raw, n_classes }
}

#[test]
fn gradients_match_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let delta = 1e-5;
    let mut checked = 0usize;
    for _ in 0..100 {
        let inst = random_instance(&mut rng);
        let (g, _) = softmax_grad_hess(&inst.labels, &inst.raw, inst.n_classes).unwrap();
        for idx in 0..inst.raw.len() {
            let mut plus = inst.raw.clone();
            plus[idx] += delta;
            let mut minus = inst.raw.clone();
            minus[idx] -= delta;
            let fd = (nll_sum(&inst.labels, &plus, inst.n_classes)
                - nll_sum(&inst.labels, &minus, inst.n_classes))
                / (2.0 * delta);
            let rel = (fd - g[idx]).abs() / g[idx].abs().max(1e-8);
            assert!(
                rel <= 1e-4,
                "gradient mismatch at flat index {idx}: analytic {} vs fd {fd} (rel {rel})",
                g[idx],
            );
            checked += 1;
        }
    }
    assert!(checked > 1000, "oracle barely exercised: {checked} entries");
}

#[test]
fn hessian_diagonal_matches_second_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let delta = 1e-3;
    for _ in 0..100 {
        let inst = random_instance(&mut rng);
        let (_, h) = softmax_grad_hess(&inst.labels, &inst.raw, inst.n_classes).unwrap();
        let center = nll_sum(&inst.labels, &inst.raw, inst.n_classes);
        for idx in 0..inst.raw.len() {
            let mut plus = inst.raw.clone();
            plus[idx] += delta;
            let mut minus = inst.raw.clone();
            minus[idx] -= delta;
            let fd = (nll_sum(&inst.labels, &plus, inst.n_classes) - 2.0 * center
                + nll_sum(&inst.labels, &minus, inst.n_classes))
                / (delta * delta);
            let rel = (fd - h[idx]).abs() / h[idx].abs().max(1e-8);
            assert!(
                rel <= 1e-3,
                "hessian mismatch at flat index {idx}: analytic {} vs fd {fd} (rel {rel})",
                h[idx],
            );
        }
    }
}

#[test]
fn mean_loss_matches_independent_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let inst = random_instance(&mut rng);
        let mean = cross_entropy_loss(&inst.labels, &inst.raw, inst.n_classes).unwrap();
        let expected = nll_sum(&inst.labels, &inst.raw, inst.n_classes) / inst.labels.len() as f64;
        assert!(
            (mean - expected).abs() <= 1e-12 * expected.abs().max(1.0),
            "mean loss {mean} vs independent {expected}"
        );
    }
}

#[test]
fn gradients_sum_to_zero_per_row() {
    // Softmax probabilities sum to one, so each row's gradient over classes
    // sums to zero (p − onehot).
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let inst = random_instance(&mut rng);
        let (g, h) = softmax_grad_hess(&inst.labels, &inst.raw, inst.n_classes).unwrap();
        for i in 0..inst.labels.len() {
            let row = &g[i * inst.n_classes..(i + 1) * inst.n_classes];
            let sum: f64 = row.iter().sum();
            assert!(sum.abs() < 1e-12, "row {i} gradient sum {sum}");
            for &hv in &h[i * inst.n_classes..(i + 1) * inst.n_classes] {
                assert!((0.0..=0.25).contains(&hv), "hessian out of p(1-p) range: {hv}");
            }
        }
    }
}
