use serde::Serialize;
use sha2::{Digest, Sha256};

use super::confusion::ConfusionMatrix;
use super::f1::F1Scores;
use crate::error::{Error, Result};

/// Hex SHA-256 of a value's canonical JSON form, for tying reports to the
/// exact configuration that produced them.
pub fn config_digest<T: Serialize>(value: &T) -> Result<String> {
    let json = serde_json::to_string(value).map_err(|e| Error::ModelFormat(e.to_string()))?;
    let digest = Sha256::digest(json.as_bytes());
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Provenance of one evaluation run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunMetadata {
    pub feature_config_digest: String,
    pub model_config_digest: String,
    pub seed: u64,
    pub blind_well: Option<String>,
}

/// Scores of one model on one evaluation set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub f1: F1Scores,
    pub confusion: ConfusionMatrix,
    pub n_samples: usize,
    pub metadata: RunMetadata,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = config_digest(&42u64).unwrap();
        let b = config_digest(&42u64).unwrap();
        let c = config_digest(&43u64).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
        assert!(a.chars().all(|ch| ch.is_ascii_hexdigit()));
    }
}
