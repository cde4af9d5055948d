//! Multiclass gradient-boosted regression trees with a regularized
//! second-order objective, shrinkage, minimum-child-weight constraints, and
//! deterministic per-tree column subsampling.

pub mod config;
pub mod model;
pub mod objective;
pub mod sampling;
pub mod split;
pub mod tree;

pub use config::GBTConfig;
pub use model::{fit, fit_traced, FitTrace, GBTModel, MODEL_FORMAT_VERSION};
pub use objective::{cross_entropy_loss, softmax_grad_hess, softmax_row};
pub use sampling::{sample_columns, stream_seed};
pub use split::{find_best_split, leaf_weight, SplitDecision};
pub use tree::{build_tree, TreeNode};
