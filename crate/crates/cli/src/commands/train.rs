use facies_core::data::{parse_dataset_file, split_blind};
use facies_core::eval::{run_blind, F1Scores, HoldoutSpec, RunMetadata};
use facies_core::Result;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::io::{ensure_dir, to_pretty_json, write_atomic};

#[derive(Serialize)]
struct TrainReport<'a> {
    n_features: usize,
    n_rounds: usize,
    n_classes: usize,
    n_fit_rows: usize,
    n_validation_rows: usize,
    final_training_loss: f64,
    validation_f1: Option<&'a F1Scores>,
    metadata: &'a RunMetadata,
}

/// Train on the non-blind wells and write model.json + train_report.json.
pub fn run(config: &ExperimentConfig) -> Result<()> {
    let dataset = parse_dataset_file(&config.dataset_path)?;
    let (train, blind) = split_blind(&dataset, &config.blind_well)?;
    let holdout = HoldoutSpec {
        validation_fraction: config.validation_fraction,
        split_seed: config.split_seed,
    };
    let run = run_blind(
        &train,
        &blind,
        &config.augmentation,
        &config.model,
        Some(holdout),
    )?;

    let mut model_json = run.model.to_json()?;
    model_json.push('\n');
    let report = TrainReport {
        n_features: run.model.feature_names.len(),
        n_rounds: run.model.trees.len(),
        n_classes: config.model.n_classes,
        n_fit_rows: run.n_fit_rows,
        n_validation_rows: run.n_validation_rows,
        final_training_loss: *run
            .trace
            .loss_by_round
            .last()
            .expect("trace holds at least the base-score loss"),
        validation_f1: run.validation_f1.as_ref(),
        metadata: &run.report.metadata,
    };
    let report_json = to_pretty_json(&report)?;

    ensure_dir(&config.output_dir)?;
    write_atomic(&config.output_dir.join("model.json"), &model_json)?;
    write_atomic(&config.output_dir.join("train_report.json"), &report_json)?;

    println!(
        "trained {} rounds x {} classes on {} rows ({} features); final loss {:.6}; wrote model.json, train_report.json to {}",
        run.model.trees.len(),
        config.model.n_classes,
        run.n_fit_rows,
        run.model.feature_names.len(),
        report.final_training_loss,
        config.output_dir.display()
    );
    Ok(())
}
