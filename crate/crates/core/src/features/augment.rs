use serde::{Deserialize, Serialize};

use super::matrix::{FeatureMatrix, Standardization};
use crate::data::dataset::{Dataset, WellLogRecord};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The seven scalar log attributes used as base features, in column order.
pub const BASE_FEATURES: [&str; 7] = [
    "GR",
    "ILD_log10",
    "DeltaPHI",
    "PHIND",
    "PE",
    "NM_M",
    "RELPOS",
];

/// Name of the physics ratio column.
pub const PHYSICS_RATIO_NAME: &str = "ILD_log10/PHIND_log10";

fn base_value(record: &WellLogRecord, feature: &str) -> f64 {
    match feature {
        "GR" => record.gr,
        "ILD_log10" => record.ild_log10,
        "DeltaPHI" => record.delta_phi,
        "PHIND" => record.phind,
        "PE" => record.pe,
        "NM_M" => record.nm_m as f64,
        "RELPOS" => record.relpos,
        other => unreachable!("unknown base feature {other}"),
    }
}

/// Which engineered feature blocks to build.
///
/// Columns are assembled in a fixed order: base, physics ratio (if enabled),
/// quadratic terms, pairwise interactions, depth gradients, neighbor
/// windows. Standardization happens after assembly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AugmentationConfig {
    pub include_quadratic: bool,
    pub include_interactions: bool,
    pub include_depth_gradients: bool,
    pub neighbor_radius: usize,
    pub include_physics_ratio: bool,
    /// Denominator guard for the physics ratio; must be positive.
    pub ratio_epsilon: f64,
}

impl Default for AugmentationConfig {
    fn default() -> Self {
        AugmentationConfig::benchmark()
    }
}

impl AugmentationConfig {
    /// Only the seven base columns.
    pub fn base_only() -> Self {
        AugmentationConfig {
            include_quadratic: false,
            include_interactions: false,
            include_depth_gradients: false,
            neighbor_radius: 0,
            include_physics_ratio: false,
            ratio_epsilon: 1e-3,
        }
    }

    /// The benchmark augmentation: quadratic terms, pairwise interactions,
    /// depth gradients, and radius-1 neighbor windows (56 columns).
    pub fn benchmark() -> Self {
        AugmentationConfig {
            include_quadratic: true,
            include_interactions: true,
            include_depth_gradients: true,
            neighbor_radius: 1,
            include_physics_ratio: false,
            ratio_epsilon: 1e-3,
        }
    }

    /// The benchmark set plus the physics ratio column (57 columns).
    pub fn physics() -> Self {
        AugmentationConfig {
            include_physics_ratio: true,
            ..AugmentationConfig::benchmark()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ratio_epsilon > 0.0) {
            return Err(Error::Config(format!(
                "ratio_epsilon must be > 0, got {}",
                self.ratio_epsilon
            )));
        }
        Ok(())
    }
}

/// log₁₀ of a porosity value in percent.
pub fn phind_log10<S: Scalar>(phind: S) -> Result<S> {
    if !(phind > S::zero()) {
        return Err(Error::NonPositivePorosity {
            value: phind.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(phind.log10())
}

/// The Archie-motivated ratio log₁₀F / log₁₀φ with a signed-epsilon guard on
/// the denominator (sign of an exactly-zero denominator taken as +1).
pub fn physics_ratio<S: Scalar>(ild_log10: S, phind: S, epsilon: S) -> Result<S> {
    if !(epsilon > S::zero()) {
        return Err(Error::Config(format!(
            "ratio epsilon must be > 0, got {}",
            epsilon.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let d = phind_log10(phind)?;
    let denominator = if d.abs() >= epsilon {
        d
    } else if d < S::zero() {
        -epsilon
    } else {
        epsilon
    };
    Ok(ild_log10 / denominator)
}

/// Append a squared copy of every input column, names suffixed `^2`.
pub fn quadratic_expansion<S: Scalar>(base: &FeatureMatrix<S>) -> Result<FeatureMatrix<S>> {
    let mut out = base.clone();
    for j in 0..base.n_cols() {
        let squared: Vec<S> = base.column(j).iter().map(|&v| v * v).collect();
        out.push_column(format!("{}^2", base.feature_names()[j]), squared)?;
    }
    Ok(out)
}

/// Append products of all unordered column pairs `i < j`, names `a*b`.
pub fn pairwise_interactions<S: Scalar>(base: &FeatureMatrix<S>) -> Result<FeatureMatrix<S>> {
    if base.n_cols() < 2 {
        return Err(Error::TooFewFeatures { count: base.n_cols() });
    }
    let mut out = base.clone();
    for i in 0..base.n_cols() {
        for j in i + 1..base.n_cols() {
            let product: Vec<S> = base
                .column(i)
                .iter()
                .zip(base.column(j))
                .map(|(&a, &b)| a * b)
                .collect();
            let name = format!(
                "{}*{}",
                base.feature_names()[i],
                base.feature_names()[j]
            );
            out.push_column(name, product)?;
        }
    }
    Ok(out)
}

/// Append well-local depth derivatives of every input column, names
/// `d<name>/dDepth`.
///
/// Interior rows use the central difference over their two neighbors; well
/// boundary rows use the one-sided difference; single-row wells get 0. Depth
/// ties make a difference's denominator zero, in which case the gradient is
/// defined as 0.
pub fn depth_gradients<S: Scalar>(base: &FeatureMatrix<S>) -> Result<FeatureMatrix<S>> {
    let spans = base.well_spans();
    for (well, span) in &spans {
        for i in span.start + 1..span.end {
            if base.depths()[i] < base.depths()[i - 1] {
                return Err(Error::UnsortedDepth {
                    well: well.to_string(),
                    index: i - span.start,
                });
            }
        }
    }

    let mut out = base.clone();
    for j in 0..base.n_cols() {
        let col = base.column(j);
        let mut gradient = vec![S::zero(); base.n_rows()];
        for (_, span) in &spans {
            for i in span.clone() {
                let lo = if i == span.start { i } else { i - 1 };
                let hi = if i + 1 == span.end { i } else { i + 1 };
                if lo == hi {
                    continue;
                }
                let dd = base.depths()[hi] - base.depths()[lo];
                if dd != 0.0 {
                    gradient[i] = (col[hi] - col[lo]) / S::from_f64_lossy(dd);
                }
            }
        }
        out.push_column(format!("d{}/dDepth", base.feature_names()[j]), gradient)?;
    }
    Ok(out)
}

/// Append shifted copies of every input column at offsets −radius..−1 and
/// +1..+radius, names `<name>@<offset>`.
///
/// Shifts never cross well boundaries; rows whose neighbor falls outside the
/// well replicate the well's edge value.
pub fn neighbor_window_augment<S: Scalar>(
    base: &FeatureMatrix<S>,
    radius: usize,
) -> Result<FeatureMatrix<S>> {
    if radius == 0 {
        return Err(Error::Config("neighbor radius must be ≥ 1".to_string()));
    }
    let spans = base.well_spans();
    let mut out = base.clone();
    let offsets: Vec<i64> =
        (-(radius as i64)..=radius as i64).filter(|&o| o != 0).collect();
    for offset in offsets {
        for j in 0..base.n_cols() {
            let col = base.column(j);
            let mut shifted = vec![S::zero(); base.n_rows()];
            for (_, span) in &spans {
                for i in span.clone() {
                    let target = (i as i64 + offset)
                        .clamp(span.start as i64, span.end as i64 - 1)
                        as usize;
                    shifted[i] = col[target];
                }
            }
            let sign = if offset > 0 { "+" } else { "" };
            out.push_column(
                format!("{}@{sign}{offset}", base.feature_names()[j]),
                shifted,
            )?;
        }
    }
    Ok(out)
}

fn base_matrix<S: Scalar>(dataset: &Dataset) -> Result<FeatureMatrix<S>> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let labels = dataset.records().iter().map(|r| r.facies.code()).collect();
    let wells = dataset.records().iter().map(|r| r.well.clone()).collect();
    let depths = dataset.records().iter().map(|r| r.depth).collect();
    let mut matrix = FeatureMatrix::new(labels, wells, depths)?;
    for feature in BASE_FEATURES {
        let values: Vec<S> = dataset
            .records()
            .iter()
            .map(|r| S::from_f64_lossy(base_value(r, feature)))
            .collect();
        matrix.push_column(feature, values)?;
    }
    Ok(matrix)
}

fn assemble<S: Scalar>(dataset: &Dataset, config: &AugmentationConfig) -> Result<FeatureMatrix<S>> {
    config.validate()?;
    let base = base_matrix::<S>(dataset)?;
    let mut out = base.clone();

    if config.include_physics_ratio {
        let epsilon = S::from_f64_lossy(config.ratio_epsilon);
        let ratio: Vec<S> = dataset
            .records()
            .iter()
            .map(|r| {
                physics_ratio(
                    S::from_f64_lossy(r.ild_log10),
                    S::from_f64_lossy(r.phind),
                    epsilon,
                )
            })
            .collect::<Result<_>>()?;
        out.push_column(PHYSICS_RATIO_NAME, ratio)?;
    }

    let append_from = |expanded: FeatureMatrix<S>, out: &mut FeatureMatrix<S>| -> Result<()> {
        for j in base.n_cols()..expanded.n_cols() {
            out.push_column(
                expanded.feature_names()[j].clone(),
                expanded.column(j).to_vec(),
            )?;
        }
        Ok(())
    };

    if config.include_quadratic {
        append_from(quadratic_expansion(&base)?, &mut out)?;
    }
    if config.include_interactions {
        append_from(pairwise_interactions(&base)?, &mut out)?;
    }
    if config.include_depth_gradients {
        append_from(depth_gradients(&base)?, &mut out)?;
    }
    if config.neighbor_radius > 0 {
        append_from(neighbor_window_augment(&base, config.neighbor_radius)?, &mut out)?;
    }
    Ok(out)
}

/// Build the engineered feature matrix without standardization.
pub fn build_raw_feature_matrix<S: Scalar>(
    dataset: &Dataset,
    config: &AugmentationConfig,
) -> Result<FeatureMatrix<S>> {
    assemble(dataset, config)
}

/// Build the engineered feature matrix for `dataset`, fitting z-score
/// parameters on it. Returns the standardized matrix and the fitted
/// parameters for reuse on held-out partitions.
pub fn build_feature_matrix<S: Scalar>(
    dataset: &Dataset,
    config: &AugmentationConfig,
) -> Result<(FeatureMatrix<S>, Standardization<S>)> {
    let mut matrix = assemble(dataset, config)?;
    let stats = Standardization::fit(&matrix)?;
    stats.apply(&mut matrix)?;
    Ok((matrix, stats))
}

/// Build the engineered feature matrix for `dataset` and standardize it with
/// parameters fitted elsewhere (training partition statistics).
pub fn build_feature_matrix_with_stats<S: Scalar>(
    dataset: &Dataset,
    config: &AugmentationConfig,
    stats: &Standardization<S>,
) -> Result<FeatureMatrix<S>> {
    let mut matrix = assemble(dataset, config)?;
    stats.apply(&mut matrix)?;
    Ok(matrix)
}
