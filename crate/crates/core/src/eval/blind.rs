use serde::Serialize;

use super::confusion::confusion_matrix;
use super::f1::{f1_from_confusion, F1Scores};
use super::report::{config_digest, EvaluationReport, RunMetadata};
use crate::data::dataset::{validation_mask, Dataset};
use crate::error::{Error, Result};
use crate::features::{
    build_raw_feature_matrix, AugmentationConfig, FeatureMatrix, Standardization,
};
use crate::gbt::{fit_traced, FitTrace, GBTConfig, GBTModel};
use crate::scalar::Scalar;

/// Row-level validation carve-out applied to the training matrix before
/// standardization and fitting. Features are engineered on the full
/// training wells first so depth-local columns stay intact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HoldoutSpec {
    pub validation_fraction: f64,
    pub split_seed: u64,
}

/// Standardized matrices for one blind experiment: the rows the model fits
/// on, the optional carved-out validation rows, the blind rows, and the
/// standardization fitted on the fit rows alone.
#[derive(Debug, Clone)]
pub struct PreparedMatrices<S: Scalar> {
    pub fit: FeatureMatrix<S>,
    pub validation: Option<FeatureMatrix<S>>,
    pub blind: FeatureMatrix<S>,
    pub stats: Standardization<S>,
}

/// Engineer, carve, and standardize the matrices for a blind experiment
/// without training anything.
pub fn prepare_matrices<S: Scalar>(
    train: &Dataset,
    blind: &Dataset,
    aug: &AugmentationConfig,
    holdout: Option<HoldoutSpec>,
) -> Result<PreparedMatrices<S>> {
    check_disjoint(train, blind)?;

    let raw_train = build_raw_feature_matrix::<S>(train, aug)?;
    let (mut fit, validation) = match holdout {
        Some(spec) => {
            let in_validation = validation_mask(
                raw_train.n_rows(),
                spec.validation_fraction,
                spec.split_seed,
            )?;
            let keep: Vec<bool> = in_validation.iter().map(|&v| !v).collect();
            (
                raw_train.filter_rows(&keep)?,
                Some(raw_train.filter_rows(&in_validation)?),
            )
        }
        None => (raw_train, None),
    };

    let stats = Standardization::fit(&fit)?;
    stats.apply(&mut fit)?;
    let validation = match validation {
        Some(mut matrix) => {
            stats.apply(&mut matrix)?;
            Some(matrix)
        }
        None => None,
    };
    let mut blind_matrix = build_raw_feature_matrix::<S>(blind, aug)?;
    stats.apply(&mut blind_matrix)?;

    Ok(PreparedMatrices {
        fit,
        validation,
        blind: blind_matrix,
        stats,
    })
}

/// Everything produced by one blind evaluation.
#[derive(Debug, Clone)]
pub struct BlindRun<S: Scalar> {
    pub report: EvaluationReport,
    /// Predicted facies codes for the blind rows, in blind dataset order.
    pub predictions: Vec<u8>,
    pub model: GBTModel<S>,
    pub trace: FitTrace<S>,
    /// Scores on the carved-out validation rows, when a holdout was used.
    pub validation_f1: Option<F1Scores>,
    /// Rows the model was fitted on, after any carve.
    pub n_fit_rows: usize,
    pub n_validation_rows: usize,
}

/// Fail if any well appears in both the training and blind datasets.
pub fn check_disjoint(train: &Dataset, blind: &Dataset) -> Result<()> {
    let overlap: Vec<String> = train
        .wells()
        .iter()
        .filter(|w| blind.wells().contains(w))
        .cloned()
        .collect();
    if overlap.is_empty() {
        Ok(())
    } else {
        Err(Error::WellOverlap { wells: overlap })
    }
}

/// Train on `train` and score the held-out `blind` wells.
///
/// Standardization statistics come from the fitted rows only and are applied
/// unchanged to the blind matrix. With a [`HoldoutSpec`], a validation
/// fraction is removed from the training rows before fitting and scored
/// alongside.
pub fn run_blind<S: Scalar>(
    train: &Dataset,
    blind: &Dataset,
    aug: &AugmentationConfig,
    model_cfg: &GBTConfig<S>,
    holdout: Option<HoldoutSpec>,
) -> Result<BlindRun<S>> {
    let prepared = prepare_matrices::<S>(train, blind, aug, holdout)?;

    let (model, trace) = fit_traced(&prepared.fit, model_cfg)?;
    let predictions = model.predict(&prepared.blind)?;
    let confusion = confusion_matrix(prepared.blind.labels(), &predictions)?;
    let f1 = f1_from_confusion(&confusion);

    let validation_f1 = match &prepared.validation {
        Some(matrix) => {
            let predicted = model.predict(matrix)?;
            Some(f1_from_confusion(&confusion_matrix(
                matrix.labels(),
                &predicted,
            )?))
        }
        None => None,
    };

    let blind_well = match blind.wells() {
        [] => None,
        [single] => Some(single.clone()),
        many => Some(many.join(",")),
    };
    let report = EvaluationReport {
        f1,
        confusion,
        n_samples: prepared.blind.n_rows(),
        metadata: RunMetadata {
            feature_config_digest: config_digest(aug)?,
            model_config_digest: config_digest(model_cfg)?,
            seed: model_cfg.seed,
            blind_well,
        },
    };
    Ok(BlindRun {
        report,
        predictions,
        model,
        trace,
        validation_f1,
        n_fit_rows: prepared.fit.n_rows(),
        n_validation_rows: prepared
            .validation
            .as_ref()
            .map_or(0, |matrix| matrix.n_rows()),
    })
}

/// Train on `train`, score `blind`, and return the report alone.
pub fn evaluate_blind<S: Scalar>(
    train: &Dataset,
    blind: &Dataset,
    aug: &AugmentationConfig,
    model_cfg: &GBTConfig<S>,
) -> Result<EvaluationReport> {
    Ok(run_blind(train, blind, aug, model_cfg, None)?.report)
}
