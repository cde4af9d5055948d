use std::path::{Path, PathBuf};

use facies_core::eval::F1Average;
use facies_core::features::AugmentationConfig;
use facies_core::{Error, GBTConfig, Result};
use serde::{Deserialize, Serialize};

use crate::io::read_to_string;

/// One experiment as a single auditable document. Loadable from JSON with
/// every field optional; command-line flags override individual fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset_path: PathBuf,
    /// Well withheld from training and scored blind.
    pub blind_well: String,
    /// Fraction of training rows carved out for validation scoring.
    pub validation_fraction: f64,
    /// Seed for the validation carve.
    pub split_seed: u64,
    pub augmentation: AugmentationConfig,
    pub model: GBTConfig,
    pub output_dir: PathBuf,
    pub f1_average: F1Average,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dataset_path: PathBuf::from("data/training_data.csv"),
            blind_well: "SHANKLE".to_string(),
            validation_fraction: 0.05,
            split_seed: 42,
            augmentation: AugmentationConfig::default(),
            model: GBTConfig::default(),
            output_dir: PathBuf::from("out"),
            f1_average: F1Average::Weighted,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        if self.dataset_path.as_os_str().is_empty() {
            return Err(Error::Config("dataset_path is empty".to_string()));
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err(Error::Config("output_dir is empty".to_string()));
        }
        if self.blind_well.is_empty() {
            return Err(Error::Config("blind_well is empty".to_string()));
        }
        if !(self.validation_fraction > 0.0 && self.validation_fraction < 1.0) {
            return Err(Error::InvalidFraction {
                fraction: self.validation_fraction,
            });
        }
        self.model.validate()
    }
}
