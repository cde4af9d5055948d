use serde::{Deserialize, Serialize};

use super::config::GBTConfig;
use super::objective::{cross_entropy_loss, softmax_grad_hess, softmax_row};
use super::sampling::{sample_columns, stream_seed};
use super::tree::{PresortedBuilder, TreeNode};
use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::scalar::Scalar;

/// Supported model document version.
pub const MODEL_FORMAT_VERSION: u64 = 1;

/// A fitted multiclass boosted-trees model.
///
/// `trees[round][class]` holds raw leaf weights; predictions scale every
/// tree's output by the learning rate. Internal class k corresponds to
/// facies code k + 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "S: Scalar"))]
pub struct GBTModel<S> {
    pub config: GBTConfig<S>,
    pub feature_names: Vec<String>,
    pub base_score: S,
    pub trees: Vec<Vec<TreeNode<S>>>,
}

/// Per-round training diagnostics from [`fit_traced`].
#[derive(Debug, Clone, Serialize)]
pub struct FitTrace<S> {
    /// Mean training cross-entropy; entry 0 is the loss of the base score
    /// alone, entry r the loss after round r.
    pub loss_by_round: Vec<S>,
}

fn internal_labels<S: Scalar>(features: &FeatureMatrix<S>, n_classes: usize) -> Result<Vec<usize>> {
    let mut labels = Vec::with_capacity(features.n_rows());
    for &code in features.labels() {
        let class = code as usize - 1;
        if code == 0 || class >= n_classes {
            return Err(Error::TooFewClasses {
                n_classes,
                max_code: code,
            });
        }
        labels.push(class);
    }
    Ok(labels)
}

/// Fit a model; see [`fit_traced`] for the training loss trace.
pub fn fit<S: Scalar>(features: &FeatureMatrix<S>, config: &GBTConfig<S>) -> Result<GBTModel<S>> {
    Ok(fit_traced(features, config)?.0)
}

/// Fit a multiclass boosted-trees model.
///
/// Each round computes softmax gradients from the current raw scores and
/// grows one tree per class on a per-tree column subset drawn from a
/// generator seeded by (seed, round, class). The result is deterministic
/// for a fixed (matrix, config) pair.
pub fn fit_traced<S: Scalar>(
    features: &FeatureMatrix<S>,
    config: &GBTConfig<S>,
) -> Result<(GBTModel<S>, FitTrace<S>)> {
    config.validate()?;
    let n = features.n_rows();
    let n_classes = config.n_classes;
    if n == 0 || features.n_cols() == 0 {
        return Err(Error::EmptyFeatureMatrix);
    }
    let labels = internal_labels(features, n_classes)?;

    let base_score = S::zero();
    let mut raw = vec![base_score; n * n_classes];
    let orders = PresortedBuilder::presort(features);
    let all_rows: Vec<u32> = (0..n as u32).collect();
    let colsample = config
        .colsample_bytree
        .to_f64()
        .expect("colsample converts to f64");

    let mut trees: Vec<Vec<TreeNode<S>>> = Vec::with_capacity(config.n_estimators);
    let mut loss_by_round = Vec::with_capacity(config.n_estimators + 1);
    loss_by_round.push(cross_entropy_loss(&labels, &raw, n_classes)?);

    let mut gk = vec![S::zero(); n];
    let mut hk = vec![S::zero(); n];
    for round in 0..config.n_estimators {
        let (g, h) = softmax_grad_hess(&labels, &raw, n_classes)?;
        let mut round_trees = Vec::with_capacity(n_classes);
        for class in 0..n_classes {
            for i in 0..n {
                gk[i] = g[i * n_classes + class];
                hk[i] = h[i * n_classes + class];
            }
            let columns = sample_columns(
                features.n_cols(),
                colsample,
                stream_seed(config.seed, round as u64, class as u64),
            );
            let mut builder = PresortedBuilder::new(features, &orders, config);
            let tree = builder.grow(&all_rows, &gk, &hk, &columns);
            for i in 0..n {
                raw[i * n_classes + class] += config.learning_rate * tree.predict_row(features, i);
            }
            round_trees.push(tree);
        }
        trees.push(round_trees);
        loss_by_round.push(cross_entropy_loss(&labels, &raw, n_classes)?);
    }

    let model = GBTModel {
        config: config.clone(),
        feature_names: features.feature_names().to_vec(),
        base_score,
        trees,
    };
    Ok((model, FitTrace { loss_by_round }))
}

impl<S: Scalar> GBTModel<S> {
    pub fn n_classes(&self) -> usize {
        self.config.n_classes
    }

    pub fn n_rounds(&self) -> usize {
        self.trees.len()
    }

    fn check_features(&self, features: &FeatureMatrix<S>) -> Result<()> {
        if features.feature_names() == self.feature_names.as_slice() {
            return Ok(());
        }
        let missing: Vec<String> = self
            .feature_names
            .iter()
            .filter(|n| !features.feature_names().contains(n))
            .cloned()
            .collect();
        let extra: Vec<String> = features
            .feature_names()
            .iter()
            .filter(|n| !self.feature_names.contains(n))
            .cloned()
            .collect();
        Err(Error::FeatureMismatch { missing, extra })
    }

    /// Raw scores: base score plus the learning-rate-scaled sum of tree
    /// outputs, row-major n×K.
    pub fn predict_raw(&self, features: &FeatureMatrix<S>) -> Result<Vec<S>> {
        self.check_features(features)?;
        let n = features.n_rows();
        let k = self.n_classes();
        let mut raw = vec![self.base_score; n * k];
        for round in &self.trees {
            for (class, tree) in round.iter().enumerate() {
                for i in 0..n {
                    raw[i * k + class] +=
                        self.config.learning_rate * tree.predict_row(features, i);
                }
            }
        }
        Ok(raw)
    }

    /// Row-softmax class probabilities, row-major n×K.
    pub fn predict_proba(&self, features: &FeatureMatrix<S>) -> Result<Vec<S>> {
        let raw = self.predict_raw(features)?;
        let k = self.n_classes();
        let mut proba = Vec::with_capacity(raw.len());
        for row in raw.chunks_exact(k) {
            proba.extend(softmax_row(row));
        }
        Ok(proba)
    }

    /// Facies code predictions (argmax, ties toward the lower code).
    pub fn predict(&self, features: &FeatureMatrix<S>) -> Result<Vec<u8>> {
        let raw = self.predict_raw(features)?;
        let k = self.n_classes();
        Ok(raw
            .chunks_exact(k)
            .map(|row| {
                let mut best = 0usize;
                for class in 1..k {
                    if row[class] > row[best] {
                        best = class;
                    }
                }
                (best + 1) as u8
            })
            .collect())
    }

    /// Serialize to the versioned JSON model document.
    pub fn to_json(&self) -> Result<String>
    where
        S: Serialize,
    {
        let document = ModelDocument {
            format_version: MODEL_FORMAT_VERSION,
            model: self.clone(),
        };
        serde_json::to_string(&document).map_err(|e| Error::ModelFormat(e.to_string()))
    }

    /// Parse a model document, checking the format version first.
    pub fn from_json(text: &str) -> Result<GBTModel<S>>
    where
        S: serde::de::DeserializeOwned,
    {
        #[derive(Deserialize)]
        struct VersionProbe {
            format_version: u64,
        }
        let probe: VersionProbe =
            serde_json::from_str(text).map_err(|e| Error::ModelFormat(e.to_string()))?;
        if probe.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::ModelVersion {
                found: probe.format_version,
                expected: MODEL_FORMAT_VERSION,
            });
        }
        let document: ModelDocument<S> =
            serde_json::from_str(text).map_err(|e| Error::ModelFormat(e.to_string()))?;
        Ok(document.model)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(deserialize = "S: Scalar"))]
struct ModelDocument<S> {
    format_version: u64,
    #[serde(flatten)]
    model: GBTModel<S>,
}
