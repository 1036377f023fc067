//! Error rates, confidence intervals and interval-overlap comparison.

mod folds;
mod ttable;

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

pub use folds::{
    cross_validate, cross_validate_with, fold_error, fold_seed, partition_folds,
    partition_folds_stratified, CvOptions, CvRun, FoldAssignment,
};
pub use ttable::t95;

use crate::corpus::Dataset;
use crate::math::sqrt;
use crate::model::Classifier;
use crate::{Error, Result};

/// Fraction of `d` the model gets wrong. Every class, `unknown` included,
/// is an ordinary label here.
pub fn error_rate<C: Classifier + ?Sized>(model: &C, d: &Dataset) -> Result<f64> {
    Ok(error_count(model, d)? as f64 / d.len() as f64)
}

pub fn error_count<C: Classifier + ?Sized>(model: &C, d: &Dataset) -> Result<usize> {
    if d.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut wrong = 0;
    for e in d {
        if model.predict(e)? != e.class() {
            wrong += 1;
        }
    }
    Ok(wrong)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    /// One test set; normal approximation to the binomial.
    HoldoutNormal,
    /// Mean of k fold errors; t distribution with k - 1 degrees of freedom.
    CvT,
}

/// An error rate with a symmetric 95% margin.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ErrorEstimate {
    pub rate: f64,
    pub margin: f64,
    pub method: Method,
    /// Test-set size for holdout estimates.
    pub n: Option<usize>,
    /// Per-fold error rates for cross-validated estimates.
    pub fold_errors: Vec<f64>,
}

impl ErrorEstimate {
    pub fn lower(&self) -> f64 {
        self.rate - self.margin
    }

    pub fn upper(&self) -> f64 {
        self.rate + self.margin
    }
}

/// Margin of two standard errors of a binomial proportion.
pub fn holdout_ci(rate: f64, n: usize) -> Result<ErrorEstimate> {
    if n == 0 {
        return Err(Error::TooFewExamples { needed: 1, got: 0 });
    }
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::InvalidArgument(alloc::format!("rate {rate} outside [0, 1]")));
    }
    Ok(ErrorEstimate {
        rate,
        margin: 2.0 * sqrt(rate * (1.0 - rate) / n as f64),
        method: Method::HoldoutNormal,
        n: Some(n),
        fold_errors: Vec::new(),
    })
}

/// Mean fold error with margin `t(0.975, k-1) * s / sqrt(k)`, where `s` is
/// the sample standard deviation of the fold errors.
pub fn cv_ci(fold_errors: &[f64]) -> Result<ErrorEstimate> {
    let k = fold_errors.len();
    if k < 2 {
        return Err(Error::TooFewExamples { needed: 2, got: k });
    }
    let kf = k as f64;
    let mean = fold_errors.iter().sum::<f64>() / kf;
    let ss: f64 = fold_errors.iter().map(|e| (e - mean) * (e - mean)).sum();
    let sd = sqrt(ss / (kf - 1.0));
    Ok(ErrorEstimate {
        rate: mean,
        margin: t95(k - 1) * sd / sqrt(kf),
        method: Method::CvT,
        n: None,
        fold_errors: fold_errors.to_vec(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Comparison {
    FirstBetter,
    SecondBetter,
    Neither,
}

/// One model is significantly better when the upper end of its interval
/// lies below the lower end of the other's.
pub fn significant(a: &ErrorEstimate, b: &ErrorEstimate) -> Comparison {
    if a.upper() < b.lower() {
        Comparison::FirstBetter
    } else if b.upper() < a.lower() {
        Comparison::SecondBetter
    } else {
        Comparison::Neither
    }
}
