//! Engineered feature construction: the benchmark augmentation (quadratic,
//! interactions, depth gradients, neighbor windows), the physics ratio
//! column, and the per-facies Archie regression diagnostic.

pub mod archie;
pub mod augment;
pub mod matrix;

pub use archie::{fit_all_archie, fit_archie_regression, ArchieFit};
pub use augment::{
    build_feature_matrix, build_feature_matrix_with_stats, build_raw_feature_matrix, depth_gradients,
    neighbor_window_augment, pairwise_interactions, phind_log10, physics_ratio,
    quadratic_expansion, AugmentationConfig, BASE_FEATURES, PHYSICS_RATIO_NAME,
};
pub use matrix::{FeatureMatrix, Standardization};
