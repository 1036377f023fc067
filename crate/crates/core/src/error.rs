use alloc::string::String;

use crate::corpus::Feature;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("feature {} is not available in the dataset", .0.code())]
    FeatureUnavailable(Feature),
    #[error("example has no value for feature {}", .0.code())]
    MissingValue(Feature),
    #[error("class counts are all zero")]
    ZeroCounts,
    #[error("degenerate split: fewer than two nonempty subsets")]
    DegenerateSplit,
    #[error("need at least {needed} examples, got {got}")]
    TooFewExamples { needed: usize, got: usize },
    #[error("no branch for the value of {} in this tree", .0.code())]
    NoBranch(Feature),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown feature set {0:?}")]
    UnknownFeatureSet(String),
    #[error("fold {fold}: {source}")]
    Fold {
        fold: usize,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}
