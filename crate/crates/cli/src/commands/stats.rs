use facies_core::data::{correlation_matrix, parse_dataset_file, summarize};
use facies_core::{FaciesLabel, Result};

use crate::config::ExperimentConfig;
use crate::io::{csv_field, ensure_dir, fmt_f64, to_pretty_json, write_atomic};

/// Emit summary.json, correlations.csv, and histograms.csv for a dataset.
pub fn run(config: &ExperimentConfig) -> Result<()> {
    let dataset = parse_dataset_file(&config.dataset_path)?;
    let stats = summarize(&dataset)?;
    let corr = correlation_matrix(&dataset)?;
    ensure_dir(&config.output_dir)?;

    write_atomic(
        &config.output_dir.join("summary.json"),
        &to_pretty_json(&stats)?,
    )?;

    let mut corr_csv = String::from("Attribute");
    for name in &corr.attributes {
        corr_csv.push(',');
        corr_csv.push_str(&csv_field(name));
    }
    corr_csv.push('\n');
    for (i, name) in corr.attributes.iter().enumerate() {
        corr_csv.push_str(&csv_field(name));
        for j in 0..corr.dim() {
            corr_csv.push(',');
            corr_csv.push_str(&fmt_f64(corr.value(i, j).unwrap_or(f64::NAN)));
        }
        corr_csv.push('\n');
    }
    write_atomic(&config.output_dir.join("correlations.csv"), &corr_csv)?;

    let mut hist_csv = String::from("kind,key,count\n");
    for (well, count) in &stats.per_well_counts {
        hist_csv.push_str(&format!("well,{},{count}\n", csv_field(well)));
    }
    for label in FaciesLabel::ALL {
        let count = stats.per_facies_counts.get(&label.code()).copied().unwrap_or(0);
        hist_csv.push_str(&format!("facies,{},{count}\n", label.short_name()));
    }
    write_atomic(&config.output_dir.join("histograms.csv"), &hist_csv)?;

    println!(
        "{}: {} records, {} wells; wrote summary.json, correlations.csv, histograms.csv to {}",
        config.dataset_path.display(),
        stats.total_records,
        stats.per_well_counts.len(),
        config.output_dir.display()
    );
    Ok(())
}
