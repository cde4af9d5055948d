use facies_core::data::{parse_dataset_file, split_blind};
use facies_core::eval::{seed_sweep, F1Average, SeedSweepCell};
use facies_core::Result;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::io::{ensure_dir, fmt_f64, to_pretty_json, write_atomic};

/// The relative-improvement band reported for the log-ratio feature on this
/// dataset's blind well.
const REFERENCE_BAND: (f64, f64) = (0.02, 0.07);

#[derive(Serialize)]
struct SweepSummary<'a> {
    f1_average: F1Average,
    seeds: &'a [u64],
    median_relative_delta: f64,
    reference_band: (f64, f64),
    median_within_reference_band: bool,
    cells: &'a [SeedSweepCell],
}

/// Paired benchmark-vs-physics sweep; writes sweep.csv + sweep_summary.json.
pub fn run(config: &ExperimentConfig, seeds: &[u64]) -> Result<()> {
    let dataset = parse_dataset_file(&config.dataset_path)?;
    let (train, blind) = split_blind(&dataset, &config.blind_well)?;

    let mut benchmark_aug = config.augmentation.clone();
    benchmark_aug.include_physics_ratio = false;
    let mut physics_aug = config.augmentation.clone();
    physics_aug.include_physics_ratio = true;

    let report = seed_sweep(
        &train,
        &blind,
        &benchmark_aug,
        &physics_aug,
        &config.model,
        seeds,
        config.f1_average,
        Some(config.validation_fraction),
    )?;

    let mut csv = String::from("seed,benchmark_f1,physics_f1,relative_delta\n");
    for cell in &report.cells {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            cell.seed,
            fmt_f64(cell.f1_a),
            fmt_f64(cell.f1_b),
            fmt_f64(cell.relative_delta)
        ));
    }

    let median = report.median_relative_delta;
    let summary = SweepSummary {
        f1_average: config.f1_average,
        seeds,
        median_relative_delta: median,
        reference_band: REFERENCE_BAND,
        median_within_reference_band: median >= REFERENCE_BAND.0 && median <= REFERENCE_BAND.1,
        cells: &report.cells,
    };

    ensure_dir(&config.output_dir)?;
    write_atomic(&config.output_dir.join("sweep.csv"), &csv)?;
    write_atomic(
        &config.output_dir.join("sweep_summary.json"),
        &to_pretty_json(&summary)?,
    )?;

    println!(
        "{} seeds on blind well {}: median relative {} F1 delta {:+.2}% (reference band {:.0}%..{:.0}%: {}); wrote sweep.csv, sweep_summary.json to {}",
        seeds.len(),
        config.blind_well,
        config.f1_average,
        100.0 * median,
        100.0 * REFERENCE_BAND.0,
        100.0 * REFERENCE_BAND.1,
        if summary.median_within_reference_band { "inside" } else { "outside" },
        config.output_dir.display()
    );
    Ok(())
}
