use serde::Serialize;

use super::blind::evaluate_blind;
use super::f1::F1Average;
use super::report::EvaluationReport;
use crate::data::dataset::Dataset;
use crate::data::split_blind;
use crate::error::{Error, Result};
use crate::features::AugmentationConfig;
use crate::gbt::GBTConfig;
use crate::scalar::Scalar;

/// One cross-validation fold.
#[derive(Debug, Clone, Serialize)]
pub struct CVFold {
    pub well: String,
    pub report: EvaluationReport,
}

/// Aggregate of a leave-one-well-out run.
#[derive(Debug, Clone, Serialize)]
pub struct CVReport {
    pub folds: Vec<CVFold>,
    pub f1_average: F1Average,
    pub mean_f1: f64,
    /// Population standard deviation of the chosen average across folds.
    pub stddev_f1: f64,
}

impl CVReport {
    pub fn fold_scores(&self) -> Vec<f64> {
        self.folds
            .iter()
            .map(|f| self.f1_average.of(&f.report.f1))
            .collect()
    }
}

/// Hold out each selected well in turn, training on all remaining wells.
///
/// `wells: None` selects every well of the dataset, in dataset order.
pub fn leave_one_well_out_cv<S: Scalar>(
    dataset: &Dataset,
    aug: &AugmentationConfig,
    model_cfg: &GBTConfig<S>,
    wells: Option<&[String]>,
    f1_average: F1Average,
) -> Result<CVReport> {
    if dataset.wells().len() < 2 {
        return Err(Error::TooFewWells {
            count: dataset.wells().len(),
        });
    }
    let selected: Vec<String> = match wells {
        Some(list) => {
            for w in list {
                if !dataset.wells().contains(w) {
                    return Err(Error::UnknownWell {
                        name: w.clone(),
                        available: dataset.wells().to_vec(),
                    });
                }
            }
            list.to_vec()
        }
        None => dataset.wells().to_vec(),
    };
    if selected.is_empty() {
        return Err(Error::TooFewWells { count: 0 });
    }

    let mut folds = Vec::with_capacity(selected.len());
    for well in &selected {
        let (train, blind) = split_blind(dataset, well)?;
        let report = evaluate_blind(&train, &blind, aug, model_cfg)?;
        folds.push(CVFold {
            well: well.clone(),
            report,
        });
    }

    let scores: Vec<f64> = folds
        .iter()
        .map(|f| f1_average.of(&f.report.f1))
        .collect();
    let mean = scores.iter().sum::<f64>() / scores.len() as f64;
    let variance =
        scores.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / scores.len() as f64;

    Ok(CVReport {
        folds,
        f1_average,
        mean_f1: mean,
        stddev_f1: variance.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::dataset::WellLogRecord;
    use crate::data::facies::FaciesLabel;

    fn synthetic(wells: &[&str], rows_per_well: usize) -> Dataset {
        let mut records = Vec::new();
        for (wi, well) in wells.iter().enumerate() {
            for i in 0..rows_per_well {
                let class = (i % 2) as u8 + 1;
                records.push(WellLogRecord {
                    facies: FaciesLabel::from_code(class).unwrap(),
                    well: well.to_string(),
                    depth: 500.0 + i as f64,
                    gr: 30.0 * class as f64 + ((i + wi) % 4) as f64,
                    ild_log10: 0.5,
                    delta_phi: 4.0,
                    phind: 11.0,
                    pe: 3.0,
                    nm_m: 1,
                    relpos: 0.5,
                });
            }
        }
        Dataset::from_records(records, "synthetic").unwrap()
    }

    fn quick_config() -> GBTConfig<f64> {
        GBTConfig {
            n_estimators: 8,
            min_child_weight: 1.0,
            colsample_bytree: 1.0,
            ..GBTConfig::default()
        }
    }

    #[test]
    fn every_well_is_held_out_exactly_once() {
        let ds = synthetic(&["A", "B", "C"], 24);
        let cv = leave_one_well_out_cv(
            &ds,
            &AugmentationConfig::base_only(),
            &quick_config(),
            None,
            F1Average::Weighted,
        )
        .unwrap();
        let held: Vec<&str> = cv.folds.iter().map(|f| f.well.as_str()).collect();
        assert_eq!(held, ["A", "B", "C"]);
        for fold in &cv.folds {
            assert_eq!(fold.report.metadata.blind_well.as_deref(), Some(fold.well.as_str()));
        }
        assert!(cv.mean_f1 > 0.9, "mean {}", cv.mean_f1);
        assert!(cv.stddev_f1 >= 0.0);
    }

    #[test]
    fn well_subset_limits_folds() {
        let ds = synthetic(&["A", "B", "C"], 16);
        let subset = ["B".to_string(), "C".to_string()];
        let cv = leave_one_well_out_cv(
            &ds,
            &AugmentationConfig::base_only(),
            &quick_config(),
            Some(&subset),
            F1Average::Micro,
        )
        .unwrap();
        assert_eq!(cv.folds.len(), 2);
        assert_eq!(cv.folds[0].well, "B");
    }

    #[test]
    fn two_well_dataset_gives_two_disjoint_folds() {
        let ds = synthetic(&["A", "B"], 20);
        let cv = leave_one_well_out_cv(
            &ds,
            &AugmentationConfig::base_only(),
            &quick_config(),
            None,
            F1Average::Weighted,
        )
        .unwrap();
        assert_eq!(cv.folds.len(), 2);
    }

    #[test]
    fn single_well_and_unknown_well_are_errors() {
        let ds = synthetic(&["A"], 10);
        assert!(matches!(
            leave_one_well_out_cv(
                &ds,
                &AugmentationConfig::base_only(),
                &quick_config(),
                None,
                F1Average::Weighted,
            ),
            Err(Error::TooFewWells { count: 1 })
        ));
        let ds2 = synthetic(&["A", "B"], 10);
        let subset = ["Z".to_string()];
        assert!(matches!(
            leave_one_well_out_cv(
                &ds2,
                &AugmentationConfig::base_only(),
                &quick_config(),
                Some(&subset),
                F1Average::Weighted,
            ),
            Err(Error::UnknownWell { .. })
        ));
    }
}
