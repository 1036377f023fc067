//! File formats, experiment runner and reports for cue-phrase
//! classification, on top of `cuephrase-core`.

pub mod corpus_file;
pub mod error;
pub mod model_io;
pub mod plan;
pub mod report;
pub mod rules_text;
pub mod runner;
pub mod tree_text;

mod text;

pub use error::{Result, WorkbenchError};
