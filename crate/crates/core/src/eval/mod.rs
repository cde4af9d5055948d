//! Scoring and experiment harnesses: confusion matrices, F1 variants,
//! blind-well evaluation, leave-one-well-out cross validation, and paired
//! seed sweeps.

pub mod blind;
pub mod confusion;
pub mod crossval;
pub mod f1;
pub mod report;
pub mod sweep;

pub use blind::{
    check_disjoint, evaluate_blind, prepare_matrices, run_blind, BlindRun, HoldoutSpec,
    PreparedMatrices,
};
pub use confusion::{confusion_matrix, normalize_confusion, ConfusionMatrix, NormalizedConfusion};
pub use crossval::{leave_one_well_out_cv, CVFold, CVReport};
pub use f1::{f1_from_confusion, f1_scores, ClassF1, F1Average, F1Scores};
pub use report::{config_digest, EvaluationReport, RunMetadata};
pub use sweep::{median, seed_sweep, SeedSweepCell, SeedSweepReport};
