use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Boosting configuration.
///
/// Defaults follow the published winner settings of the facies contest:
/// learning rate 0.12, max depth 3, min child weight 10, 150 rounds, seed
/// 10, column subsample 0.9. The regularizer Ω(f) = γT + ½λ‖w‖² defaults to
/// λ = 1, γ = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
#[serde(bound(deserialize = "S: Scalar"))]
pub struct GBTConfig<S> {
    /// Shrinkage η applied to every tree's contribution.
    pub learning_rate: S,
    pub max_depth: usize,
    /// Minimum Hessian sum required in each child of a split.
    pub min_child_weight: S,
    /// Number of boosting rounds; each round grows one tree per class.
    pub n_estimators: usize,
    pub seed: u64,
    /// Fraction of columns drawn (without replacement) per tree.
    pub colsample_bytree: S,
    /// L2 penalty λ on leaf weights.
    pub reg_lambda: S,
    /// Per-leaf complexity penalty γ.
    pub gamma: S,
    pub n_classes: usize,
}

impl<S: Scalar> Default for GBTConfig<S> {
    fn default() -> Self {
        GBTConfig {
            learning_rate: S::from_f64_lossy(0.12),
            max_depth: 3,
            min_child_weight: S::from_f64_lossy(10.0),
            n_estimators: 150,
            seed: 10,
            colsample_bytree: S::from_f64_lossy(0.9),
            reg_lambda: S::one(),
            gamma: S::zero(),
            n_classes: 9,
        }
    }
}

impl<S: Scalar> GBTConfig<S> {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > S::zero()) {
            return Err(Error::Config("learning_rate must be > 0".to_string()));
        }
        if self.max_depth == 0 {
            return Err(Error::Config("max_depth must be ≥ 1".to_string()));
        }
        if !(self.min_child_weight >= S::zero()) {
            return Err(Error::Config("min_child_weight must be ≥ 0".to_string()));
        }
        if self.n_estimators == 0 {
            return Err(Error::Config("n_estimators must be ≥ 1".to_string()));
        }
        if !(self.colsample_bytree > S::zero() && self.colsample_bytree <= S::one()) {
            return Err(Error::Config(
                "colsample_bytree must lie in (0, 1]".to_string(),
            ));
        }
        if !(self.reg_lambda >= S::zero()) {
            return Err(Error::Config("reg_lambda must be ≥ 0".to_string()));
        }
        if !(self.gamma >= S::zero()) {
            return Err(Error::Config("gamma must be ≥ 0".to_string()));
        }
        if self.n_classes == 0 {
            return Err(Error::Config("n_classes must be ≥ 1".to_string()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_winner_settings() {
        let c: GBTConfig<f64> = GBTConfig::default();
        assert_eq!(c.learning_rate, 0.12);
        assert_eq!(c.max_depth, 3);
        assert_eq!(c.min_child_weight, 10.0);
        assert_eq!(c.n_estimators, 150);
        assert_eq!(c.seed, 10);
        assert_eq!(c.colsample_bytree, 0.9);
        assert_eq!(c.reg_lambda, 1.0);
        assert_eq!(c.gamma, 0.0);
        assert_eq!(c.n_classes, 9);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn partial_json_fills_defaults() {
        let c: GBTConfig<f64> = serde_json::from_str(r#"{"seed": 7}"#).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.n_estimators, 150);
    }

    #[test]
    fn unknown_field_is_rejected() {
        let err = serde_json::from_str::<GBTConfig<f64>>(r#"{"sed": 7}"#).unwrap_err();
        assert!(err.to_string().contains("sed"), "{err}");
    }

    #[test]
    fn validation_rejects_bad_values() {
        let mut c: GBTConfig<f64> = GBTConfig::default();
        c.colsample_bytree = 0.0;
        assert!(c.validate().is_err());
        c = GBTConfig::default();
        c.learning_rate = -0.1;
        assert!(c.validate().is_err());
        c = GBTConfig::default();
        c.n_estimators = 0;
        assert!(c.validate().is_err());
    }
}
