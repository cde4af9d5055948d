//! Rock-facies classification from wireline well logs.
//!
//! The crate covers the full pipeline: CSV ingestion and validation,
//! benchmark and physics-motivated feature augmentation, a regularized
//! multiclass gradient-boosted-trees engine, and an evaluation harness with
//! blind-well holdout, leave-one-well-out cross-validation, and seed sweeps.
//!
//! Numeric kernels are generic over the [`Scalar`] trait; [`FeatureMatrix`],
//! [`GBTModel`] and friends are the `f64` instantiations used by the CLI.

// Comparisons like `!(x > y)` are deliberate: they must stay true when
// either side is NaN, which `x <= y` would not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod data;
pub mod error;
pub mod eval;
pub mod features;
pub mod gbt;
pub mod scalar;

pub use data::{Dataset, FaciesLabel, SummaryStats, WellLogRecord};
pub use error::{Error, Result};
pub use eval::{ConfusionMatrix, F1Average, F1Scores};
pub use scalar::Scalar;

/// Default-precision feature matrix.
pub type FeatureMatrix = features::FeatureMatrix<f64>;
/// Default-precision standardization parameters.
pub type Standardization = features::Standardization<f64>;
/// Default-precision boosted-trees model.
pub type GBTModel = gbt::GBTModel<f64>;
/// Default-precision training configuration.
pub type GBTConfig = gbt::GBTConfig<f64>;
