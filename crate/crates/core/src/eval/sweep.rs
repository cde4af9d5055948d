use serde::Serialize;

use super::blind::{run_blind, HoldoutSpec};
use super::f1::F1Average;
use crate::data::dataset::Dataset;
use crate::error::{Error, Result};
use crate::features::AugmentationConfig;
use crate::gbt::GBTConfig;
use crate::scalar::Scalar;

/// One seed's paired evaluation of two feature configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeedSweepCell {
    pub seed: u64,
    pub f1_a: f64,
    pub f1_b: f64,
    /// (f1_b − f1_a) / f1_a.
    pub relative_delta: f64,
}

/// Paired A/B comparison across seeds.
#[derive(Debug, Clone, Serialize)]
pub struct SeedSweepReport {
    pub cells: Vec<SeedSweepCell>,
    pub f1_average: F1Average,
    pub median_relative_delta: f64,
}

/// Median of a non-empty slice (mean of the middle pair for even lengths).
pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// Evaluate feature configs A and B on the same blind split across seeds.
///
/// Each seed drives both the model's column subsampling and, when
/// `validation_fraction` is set, the row-level holdout carved from the
/// training matrix; A and B therefore see identical partitions within a
/// seed and differ only in the feature set.
#[allow(clippy::too_many_arguments)]
pub fn seed_sweep<S: Scalar>(
    train: &Dataset,
    blind: &Dataset,
    aug_a: &AugmentationConfig,
    aug_b: &AugmentationConfig,
    model_cfg: &GBTConfig<S>,
    seeds: &[u64],
    f1_average: F1Average,
    validation_fraction: Option<f64>,
) -> Result<SeedSweepReport> {
    if seeds.len() < 2 {
        return Err(Error::TooFewSeeds { count: seeds.len() });
    }
    let mut cells = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let cfg = GBTConfig {
            seed,
            ..model_cfg.clone()
        };
        let holdout = validation_fraction.map(|fraction| HoldoutSpec {
            validation_fraction: fraction,
            split_seed: seed,
        });
        let f1_a = f1_average.of(&run_blind(train, blind, aug_a, &cfg, holdout)?.report.f1);
        let f1_b = f1_average.of(&run_blind(train, blind, aug_b, &cfg, holdout)?.report.f1);
        if f1_a == 0.0 {
            return Err(Error::ZeroBaseline);
        }
        cells.push(SeedSweepCell {
            seed,
            f1_a,
            f1_b,
            relative_delta: (f1_b - f1_a) / f1_a,
        });
    }
    let deltas: Vec<f64> = cells.iter().map(|c| c.relative_delta).collect();
    Ok(SeedSweepReport {
        cells,
        f1_average,
        median_relative_delta: median(&deltas),
    })
}
