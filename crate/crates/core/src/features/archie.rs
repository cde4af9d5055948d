use serde::Serialize;

use super::augment::phind_log10;
use crate::data::dataset::Dataset;
use crate::data::facies::FaciesLabel;
use crate::error::{Error, Result};

/// Per-facies least-squares fit of log₁₀F against log₁₀φ.
///
/// In the Archie form log₁₀F = log₁₀C − m·log₁₀φ the slope equals −m
/// (negated cementation factor) and the intercept equals log₁₀C (tortuosity
/// constant).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArchieFit {
    pub facies: FaciesLabel,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Ordinary least squares of `ild_log10` on `log₁₀(phind)` over one facies.
pub fn fit_archie_regression(dataset: &Dataset, facies: FaciesLabel) -> Result<ArchieFit> {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for r in dataset.records() {
        if r.facies == facies {
            xs.push(phind_log10(r.phind)?);
            ys.push(r.ild_log10);
        }
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::DegenerateFit {
            facies: facies.code(),
            reason: format!("needs at least 2 records, found {n}"),
        });
    }

    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let mean_y = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for i in 0..n {
        let dx = xs[i] - mean_x;
        let dy = ys[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateFit {
            facies: facies.code(),
            reason: "zero variance in log₁₀φ".to_string(),
        });
    }

    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        // Response is constant and perfectly reproduced by the fit.
        1.0
    } else {
        ((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0)
    };

    Ok(ArchieFit {
        facies,
        slope,
        intercept,
        r_squared,
        n_points: n,
    })
}

/// Fit every facies present in the dataset, skipping degenerate ones.
pub fn fit_all_archie(dataset: &Dataset) -> Vec<ArchieFit> {
    FaciesLabel::ALL
        .iter()
        .filter_map(|&facies| fit_archie_regression(dataset, facies).ok())
        .collect()
}
