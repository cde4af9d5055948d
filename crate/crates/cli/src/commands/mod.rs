pub mod crossval;
pub mod evaluate;
pub mod stats;
pub mod sweep;
pub mod train;
