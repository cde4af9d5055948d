//! Well-log dataset model: parsing, validation, splits, and descriptive
//! statistics.

pub mod dataset;
pub mod facies;
pub mod stats;

pub use dataset::{
    parse_dataset, parse_dataset_file, split_blind, train_validation_split, validation_mask,
    Dataset, WellLogRecord, REQUIRED_COLUMNS,
};
pub use facies::FaciesLabel;
pub use stats::{
    correlation_matrix, summarize, AttributeStats, CorrelationMatrix, SummaryStats,
    CORRELATION_ATTRIBUTES,
};
