use std::io::Write;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense column-major feature matrix with named columns and a per-row
/// label/well/depth sidecar. Values are validated finite on insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix<S: Scalar> {
    feature_names: Vec<String>,
    columns: Vec<Vec<S>>,
    labels: Vec<u8>,
    wells: Vec<String>,
    depths: Vec<f64>,
}

impl<S: Scalar> FeatureMatrix<S> {
    /// Create a matrix with no feature columns yet.
    pub fn new(labels: Vec<u8>, wells: Vec<String>, depths: Vec<f64>) -> Result<Self> {
        if labels.len() != wells.len() || labels.len() != depths.len() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: wells.len().max(depths.len()),
            });
        }
        Ok(FeatureMatrix {
            feature_names: Vec::new(),
            columns: Vec::new(),
            labels,
            wells,
            depths,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn wells(&self) -> &[String] {
        &self.wells
    }

    pub fn depths(&self) -> &[f64] {
        &self.depths
    }

    pub fn column(&self, j: usize) -> &[S] {
        &self.columns[j]
    }

    pub fn column_by_name(&self, name: &str) -> Option<&[S]> {
        let j = self.feature_names.iter().position(|n| n == name)?;
        Some(&self.columns[j])
    }

    pub fn value(&self, row: usize, col: usize) -> S {
        self.columns[col][row]
    }

    /// One row as a dense vector, in column order.
    pub fn row(&self, i: usize) -> Vec<S> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    /// Append a named column; the name must be new and every value finite.
    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<S>) -> Result<()> {
        let name = name.into();
        if values.len() != self.n_rows() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: self.n_rows(),
            });
        }
        if self.feature_names.iter().any(|n| n == &name) {
            return Err(Error::Config(format!("duplicate feature name {name:?}")));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidRecord {
                row: i + 1,
                message: format!("non-finite value in feature {name:?}"),
            });
        }
        self.feature_names.push(name);
        self.columns.push(values);
        Ok(())
    }

    /// Copy of the matrix keeping only rows where `keep` is true.
    pub fn filter_rows(&self, keep: &[bool]) -> Result<FeatureMatrix<S>> {
        if keep.len() != self.n_rows() {
            return Err(Error::LengthMismatch {
                left: keep.len(),
                right: self.n_rows(),
            });
        }
        let pick = |i: &usize| keep[*i];
        let rows: Vec<usize> = (0..self.n_rows()).filter(pick).collect();
        Ok(FeatureMatrix {
            feature_names: self.feature_names.clone(),
            columns: self
                .columns
                .iter()
                .map(|c| rows.iter().map(|&i| c[i]).collect())
                .collect(),
            labels: rows.iter().map(|&i| self.labels[i]).collect(),
            wells: rows.iter().map(|&i| self.wells[i].clone()).collect(),
            depths: rows.iter().map(|&i| self.depths[i]).collect(),
        })
    }

    /// Contiguous row range of each well, in order of appearance.
    pub fn well_spans(&self) -> Vec<(&str, Range<usize>)> {
        let mut spans: Vec<(&str, Range<usize>)> = Vec::new();
        for (i, well) in self.wells.iter().enumerate() {
            match spans.last_mut() {
                Some((name, range)) if *name == well.as_str() => range.end = i + 1,
                _ => spans.push((well.as_str(), i..i + 1)),
            }
        }
        spans
    }

    /// Export as CSV: feature columns, then Facies, Well Name, Depth.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header: Vec<String> = self.feature_names.clone();
        header.extend(["Facies".to_string(), "Well Name".to_string(), "Depth".to_string()]);
        w.write_record(&header)?;
        for i in 0..self.n_rows() {
            let mut record: Vec<String> = self
                .columns
                .iter()
                .map(|c| format!("{}", c[i]))
                .collect();
            record.push(self.labels[i].to_string());
            record.push(self.wells[i].clone());
            record.push(self.depths[i].to_string());
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Per-column z-score parameters fitted on a training partition.
///
/// Zero-variance columns keep a unit divisor so transformed values stay
/// finite (they become identically zero).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardization<S> {
    pub feature_names: Vec<String>,
    pub means: Vec<S>,
    pub stddevs: Vec<S>,
}

impl<S: Scalar> Standardization<S> {
    /// Fit means and population standard deviations on `matrix`.
    pub fn fit(matrix: &FeatureMatrix<S>) -> Result<Self> {
        if matrix.n_rows() == 0 {
            return Err(Error::EmptyFeatureMatrix);
        }
        let n = S::from_f64_lossy(matrix.n_rows() as f64);
        let mut means = Vec::with_capacity(matrix.n_cols());
        let mut stddevs = Vec::with_capacity(matrix.n_cols());
        for j in 0..matrix.n_cols() {
            let col = matrix.column(j);
            let mean = col.iter().copied().sum::<S>() / n;
            let ss = col
                .iter()
                .map(|&v| (v - mean) * (v - mean))
                .sum::<S>();
            means.push(mean);
            stddevs.push((ss / n).sqrt());
        }
        Ok(Standardization {
            feature_names: matrix.feature_names().to_vec(),
            means,
            stddevs,
        })
    }

    /// Z-score every column of `matrix` in place using these parameters.
    pub fn apply(&self, matrix: &mut FeatureMatrix<S>) -> Result<()> {
        if matrix.feature_names() != self.feature_names.as_slice() {
            let missing: Vec<String> = self
                .feature_names
                .iter()
                .filter(|n| !matrix.feature_names().contains(n))
                .cloned()
                .collect();
            let extra: Vec<String> = matrix
                .feature_names()
                .iter()
                .filter(|n| !self.feature_names.contains(n))
                .cloned()
                .collect();
            return Err(Error::FeatureMismatch { missing, extra });
        }
        for (j, column) in matrix.columns.iter_mut().enumerate() {
            let mean = self.means[j];
            let sd = self.stddevs[j];
            let divisor = if sd > S::zero() { sd } else { S::one() };
            for v in column.iter_mut() {
                *v = (*v - mean) / divisor;
            }
        }
        Ok(())
    }
}
