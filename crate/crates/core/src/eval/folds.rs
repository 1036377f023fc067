//! Seeded fold assignment and k-fold cross-validation.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::{cv_ci, error_rate, ErrorEstimate};
use crate::corpus::{ClassLabel, Dataset};
use crate::model::LearnerSpec;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FoldAssignment {
    pub k: usize,
    pub seed: u64,
    /// Fold of each example, by example index.
    pub assignment: Vec<usize>,
}

impl FoldAssignment {
    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] != fold)
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = alloc::vec![0; self.k];
        for &f in &self.assignment {
            s[f] += 1;
        }
        s
    }
}

fn check(n: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(alloc::format!("k must be at least 2, got {k}")));
    }
    if n < k {
        return Err(Error::TooFewExamples { needed: k, got: n });
    }
    Ok(())
}

fn deal(order: &[usize], n: usize, k: usize, seed: u64) -> FoldAssignment {
    let mut assignment = alloc::vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        assignment[i] = pos % k;
    }
    FoldAssignment {
        k,
        seed,
        assignment,
    }
}

/// Shuffles `0..n` with `seed` and deals the result round-robin into `k`
/// folds, so fold sizes differ by at most one.
pub fn partition_folds(n: usize, k: usize, seed: u64) -> Result<FoldAssignment> {
    check(n, k)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Ok(deal(&order, n, k, seed))
}

/// Like [`partition_folds`], but shuffles within each class and deals the
/// classes one after another, so every fold gets a near-equal share of
/// each class.
pub fn partition_folds_stratified(
    classes: &[ClassLabel],
    k: usize,
    seed: u64,
) -> Result<FoldAssignment> {
    let n = classes.len();
    check(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = Vec::with_capacity(n);
    for &c in ClassLabel::ALL {
        let mut idx: Vec<usize> = (0..n).filter(|&i| classes[i] == c).collect();
        idx.shuffle(&mut rng);
        order.extend(idx);
    }
    Ok(deal(&order, n, k, seed))
}

/// Learner seed for one fold, independent of the order folds run in.
pub fn fold_seed(seed: u64, fold: usize) -> u64 {
    // splitmix64 finalizer over the pair.
    let mut z = seed ^ (fold as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CvOptions {
    pub k: usize,
    pub seed: u64,
    pub stratified: bool,
    /// Train only on examples labeled discourse or sentential while still
    /// testing on every example of the fold.
    pub train_classifiable_only: bool,
}

impl CvOptions {
    pub fn new(k: usize, seed: u64) -> Self {
        CvOptions {
            k,
            seed,
            stratified: false,
            train_classifiable_only: false,
        }
    }

    pub fn folds(&self, d: &Dataset) -> Result<FoldAssignment> {
        if self.stratified {
            let classes: Vec<ClassLabel> = d.iter().map(|e| e.class()).collect();
            partition_folds_stratified(&classes, self.k, self.seed)
        } else {
            partition_folds(d.len(), self.k, self.seed)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CvRun {
    pub estimate: ErrorEstimate,
    pub folds: FoldAssignment,
}

/// Trains a fresh model on everything outside `fold` and returns its
/// error rate on `fold`. Errors carry the fold index.
pub fn fold_error(
    learner: &LearnerSpec,
    d: &Dataset,
    folds: &FoldAssignment,
    fold: usize,
    opts: &CvOptions,
) -> Result<f64> {
    let wrap = |e: Error| Error::Fold {
        fold,
        source: Box::new(e),
    };
    let mut train = d.select(&folds.train_indices(fold));
    if opts.train_classifiable_only {
        train = train.filter_classifiable();
    }
    let test = d.select(&folds.test_indices(fold));
    let model = learner
        .fit(&train, fold_seed(opts.seed, fold))
        .map_err(wrap)?;
    error_rate(&model, &test).map_err(wrap)
}

/// Cross-validation with a caller-supplied fold runner, for running folds
/// concurrently. `run` receives each fold index once; results are combined
/// in fold order.
pub fn cross_validate_with<F>(d: &Dataset, opts: &CvOptions, run: F) -> Result<CvRun>
where
    F: FnOnce(&FoldAssignment) -> Result<Vec<f64>>,
{
    let folds = opts.folds(d)?;
    let errors = run(&folds)?;
    Ok(CvRun {
        estimate: cv_ci(&errors)?,
        folds,
    })
}

/// Sequential k-fold cross-validation.
pub fn cross_validate(
    learner: &LearnerSpec,
    d: &Dataset,
    opts: &CvOptions,
) -> Result<CvRun> {
    cross_validate_with(d, opts, |folds| {
        (0..opts.k)
            .map(|f| fold_error(learner, d, folds, f, opts))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_sizes() {
        let mut s = partition_folds(953, 10, 5).unwrap().sizes();
        s.sort_unstable();
        assert_eq!(s, [95, 95, 95, 95, 95, 95, 95, 96, 96, 96]);
        let mut s = partition_folds(878, 10, 5).unwrap().sizes();
        s.sort_unstable();
        assert_eq!(s, [87, 87, 88, 88, 88, 88, 88, 88, 88, 88]);
        assert!(partition_folds(5, 10, 0).is_err());
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(partition_folds(100, 10, 3), partition_folds(100, 10, 3));
        assert_ne!(
            partition_folds(100, 10, 3).unwrap().assignment,
            partition_folds(100, 10, 4).unwrap().assignment
        );
    }

    #[test]
    fn stratified_spreads_classes() {
        let mut classes = alloc::vec![ClassLabel::Sentential; 90];
        classes.extend([ClassLabel::Discourse; 10]);
        let f = partition_folds_stratified(&classes, 10, 1).unwrap();
        for fold in 0..10 {
            let d = f
                .test_indices(fold)
                .iter()
                .filter(|&&i| classes[i] == ClassLabel::Discourse)
                .count();
            assert_eq!(d, 1);
        }
    }

    #[test]
    fn fold_seeds_differ() {
        assert_ne!(fold_seed(1, 0), fold_seed(1, 1));
        assert_ne!(fold_seed(1, 0), fold_seed(2, 0));
    }
}
