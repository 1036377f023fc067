//! Cue-phrase classification core.
//!
//! Everything here is pure computation over in-memory values: the feature
//! schema and corpus model, the two hand-built classifiers and the
//! default-class baseline, gain-ratio decision trees, separate-and-conquer
//! rule lists, and the error-estimation statistics used to compare them.
//! File formats, reports and the command line live in the `cuephrase`
//! companion crate.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod baselines;
pub mod corpus;
pub mod dtree;
pub mod eval;
pub mod model;
pub mod rules;

mod error;
mod math;
mod table;

pub use error::{Error, Result};

pub use corpus::{
    ClassCounts, ClassLabel, Dataset, Example, Feature, FeatureMask, FeatureSetSpec, Features,
    JudgeLabel, Value,
};
pub use model::{Classifier, LearnerSpec, Model};
