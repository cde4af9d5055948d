use std::path::Path;

use facies_core::data::{parse_dataset_file, split_blind};
use facies_core::eval::{
    config_digest, confusion_matrix, f1_from_confusion, prepare_matrices, run_blind,
    EvaluationReport, F1Scores, HoldoutSpec, RunMetadata,
};
use facies_core::{FaciesLabel, GBTModel, Result};
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::io::{csv_field, ensure_dir, read_to_string, to_pretty_json, write_atomic};

#[derive(Serialize)]
struct EvaluateOutput<'a> {
    #[serde(flatten)]
    report: &'a EvaluationReport,
    validation_f1: Option<&'a F1Scores>,
}

/// Score the blind well, training in-process unless a saved model is given.
/// Writes report.json, confusion.csv, and predictions_track.csv.
pub fn run(config: &ExperimentConfig, model_path: Option<&Path>) -> Result<()> {
    let dataset = parse_dataset_file(&config.dataset_path)?;
    let (train, blind) = split_blind(&dataset, &config.blind_well)?;
    let holdout = HoldoutSpec {
        validation_fraction: config.validation_fraction,
        split_seed: config.split_seed,
    };

    let (report, predictions, validation_f1) = match model_path {
        None => {
            let run = run_blind(
                &train,
                &blind,
                &config.augmentation,
                &config.model,
                Some(holdout),
            )?;
            (run.report, run.predictions, run.validation_f1)
        }
        Some(path) => {
            // The feature pipeline is rebuilt from the config; the model
            // only contributes trees, and prediction rejects it if its
            // feature names do not match the engineered columns.
            let model: GBTModel = GBTModel::from_json(&read_to_string(path)?)?;
            let prepared =
                prepare_matrices::<f64>(&train, &blind, &config.augmentation, Some(holdout))?;
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
            let report = EvaluationReport {
                f1,
                confusion,
                n_samples: prepared.blind.n_rows(),
                metadata: RunMetadata {
                    feature_config_digest: config_digest(&config.augmentation)?,
                    model_config_digest: config_digest(&model.config)?,
                    seed: model.config.seed,
                    blind_well: Some(config.blind_well.clone()),
                },
            };
            (report, predictions, validation_f1)
        }
    };

    ensure_dir(&config.output_dir)?;
    write_atomic(
        &config.output_dir.join("report.json"),
        &to_pretty_json(&EvaluateOutput {
            report: &report,
            validation_f1: validation_f1.as_ref(),
        })?,
    )?;

    let mut confusion_csv = String::from("facies");
    for label in FaciesLabel::ALL {
        confusion_csv.push(',');
        confusion_csv.push_str(label.short_name());
    }
    confusion_csv.push('\n');
    for (i, label) in FaciesLabel::ALL.iter().enumerate() {
        confusion_csv.push_str(label.short_name());
        for j in 0..FaciesLabel::ALL.len() {
            confusion_csv.push_str(&format!(",{}", report.confusion.counts[i][j]));
        }
        confusion_csv.push('\n');
    }
    write_atomic(&config.output_dir.join("confusion.csv"), &confusion_csv)?;

    let mut track_csv = String::from("Depth,True,Predicted\n");
    for (record, &predicted) in blind.records().iter().zip(&predictions) {
        track_csv.push_str(&format!(
            "{},{},{predicted}\n",
            csv_field(&record.depth.to_string()),
            record.facies.code(),
        ));
    }
    write_atomic(
        &config.output_dir.join("predictions_track.csv"),
        &track_csv,
    )?;

    let scheme = config.f1_average;
    println!(
        "blind well {}: {} F1 {:.4} (micro {:.4}, macro {:.4}, weighted {:.4}) over {} samples; wrote report.json, confusion.csv, predictions_track.csv to {}",
        config.blind_well,
        scheme,
        scheme.of(&report.f1),
        report.f1.micro,
        report.f1.macro_avg,
        report.f1.weighted,
        report.n_samples,
        config.output_dir.display()
    );
    Ok(())
}
