use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-tree seed derived from (model seed, round, class).
pub fn stream_seed(seed: u64, round: u64, class: u64) -> u64 {
    splitmix64(seed ^ splitmix64(round.wrapping_add(splitmix64(class))))
}

/// Draw ⌈colsample · n_cols⌉ distinct column indices, returned ascending.
pub fn sample_columns(n_cols: usize, colsample: f64, seed: u64) -> Vec<usize> {
    let count = ((colsample * n_cols as f64).ceil() as usize).clamp(1, n_cols);
    if count == n_cols {
        return (0..n_cols).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns = rand::seq::index::sample(&mut rng, n_cols, count).into_vec();
    columns.sort_unstable();
    columns
}
