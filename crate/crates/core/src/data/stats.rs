use std::collections::BTreeMap;

use serde::Serialize;

use super::dataset::Dataset;
use crate::error::{Error, Result};

/// Attributes covered by [`correlation_matrix`], in output order. The facies
/// code is treated as a numeric variable.
pub const CORRELATION_ATTRIBUTES: [&str; 9] = [
    "Facies",
    "Depth",
    "GR",
    "ILD_log10",
    "DeltaPHI",
    "PHIND",
    "PE",
    "NM_M",
    "RELPOS",
];

fn attribute_value(record: &super::dataset::WellLogRecord, attribute: &str) -> f64 {
    match attribute {
        "Facies" => record.facies.code() as f64,
        "Depth" => record.depth,
        "GR" => record.gr,
        "ILD_log10" => record.ild_log10,
        "DeltaPHI" => record.delta_phi,
        "PHIND" => record.phind,
        "PE" => record.pe,
        "NM_M" => record.nm_m as f64,
        "RELPOS" => record.relpos,
        other => unreachable!("unknown attribute {other}"),
    }
}

/// Range and moments of one attribute. `stddev` is the population standard
/// deviation, so a single-record dataset reports 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttributeStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub stddev: f64,
}

/// Descriptive statistics of a dataset.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryStats {
    pub total_records: usize,
    pub per_well_counts: BTreeMap<String, usize>,
    pub per_facies_counts: BTreeMap<u8, usize>,
    pub per_attribute: BTreeMap<String, AttributeStats>,
}

/// Compute per-well and per-facies counts plus attribute moments.
pub fn summarize(dataset: &Dataset) -> Result<SummaryStats> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut per_well_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut per_facies_counts: BTreeMap<u8, usize> = BTreeMap::new();
    for r in dataset.records() {
        *per_well_counts.entry(r.well.clone()).or_insert(0) += 1;
        *per_facies_counts.entry(r.facies.code()).or_insert(0) += 1;
    }

    let n = dataset.len() as f64;
    let mut per_attribute = BTreeMap::new();
    for attribute in CORRELATION_ATTRIBUTES.iter().skip(1) {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        for r in dataset.records() {
            let v = attribute_value(r, attribute);
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
        let mean = sum / n;
        let mut ss = 0.0;
        for r in dataset.records() {
            let d = attribute_value(r, attribute) - mean;
            ss += d * d;
        }
        per_attribute.insert(
            attribute.to_string(),
            AttributeStats {
                min,
                max,
                mean,
                stddev: (ss / n).sqrt(),
            },
        );
    }

    Ok(SummaryStats {
        total_records: dataset.len(),
        per_well_counts,
        per_facies_counts,
        per_attribute,
    })
}

/// Pearson correlation matrix over [`CORRELATION_ATTRIBUTES`].
///
/// Entries touching a zero-variance attribute are undefined (stored as NaN
/// and flagged in `degenerate`) rather than silently zero.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    pub attributes: Vec<String>,
    values: Vec<f64>,
    pub degenerate: Vec<bool>,
}

impl CorrelationMatrix {
    pub fn dim(&self) -> usize {
        self.attributes.len()
    }

    /// Raw entry, NaN when either attribute is degenerate.
    pub fn raw(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim() + j]
    }

    /// Entry as `Some(r)` when defined, `None` when degenerate.
    pub fn value(&self, i: usize, j: usize) -> Option<f64> {
        if self.degenerate[i] || self.degenerate[j] {
            None
        } else {
            Some(self.raw(i, j))
        }
    }

    /// Entry looked up by attribute names.
    pub fn by_name(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.attributes.iter().position(|x| x == a)?;
        let j = self.attributes.iter().position(|x| x == b)?;
        self.value(i, j)
    }
}

/// Compute the correlation matrix of a dataset with ≥ 2 records.
pub fn correlation_matrix(dataset: &Dataset) -> Result<CorrelationMatrix> {
    if dataset.len() < 2 {
        return Err(Error::InvalidRecord {
            row: dataset.len(),
            message: "correlation needs at least 2 records".to_string(),
        });
    }
    let dim = CORRELATION_ATTRIBUTES.len();
    let n = dataset.len() as f64;

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for attribute in CORRELATION_ATTRIBUTES {
        columns.push(
            dataset
                .records()
                .iter()
                .map(|r| attribute_value(r, attribute))
                .collect(),
        );
    }

    let means: Vec<f64> = columns.iter().map(|c| c.iter().sum::<f64>() / n).collect();
    let centered: Vec<Vec<f64>> = columns
        .iter()
        .zip(&means)
        .map(|(c, m)| c.iter().map(|v| v - m).collect())
        .collect();
    let norms: Vec<f64> = centered
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    let degenerate: Vec<bool> = norms.iter().map(|&s| s == 0.0).collect();

    let mut values = vec![f64::NAN; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            if degenerate[i] || degenerate[j] {
                continue;
            }
            values[i * dim + j] = if i == j {
                1.0
            } else {
                let dot: f64 = centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum();
                dot / (norms[i] * norms[j])
            };
        }
    }

    Ok(CorrelationMatrix {
        attributes: CORRELATION_ATTRIBUTES.iter().map(|s| s.to_string()).collect(),
        values,
        degenerate,
    })
}
