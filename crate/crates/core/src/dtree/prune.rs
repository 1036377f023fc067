//! Pessimistic subtree replacement.

use alloc::boxed::Box;

use super::{Branch, DecisionTree, TreeConfig, TreeNode};
use crate::corpus::ClassCounts;
use crate::math::{exp, lgamma, ln, powf, TIE_EPS};

fn binomial_cdf(k: usize, n: usize, p: f64) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return if k >= n { 1.0 } else { 0.0 };
    }
    let (lp, lq) = (ln(p), ln(1.0 - p));
    let lnf = lgamma(n as f64 + 1.0);
    let mut s = 0.0;
    for i in 0..=k.min(n) {
        let lc = lnf - lgamma(i as f64 + 1.0) - lgamma((n - i) as f64 + 1.0);
        s += exp(lc + i as f64 * lp + (n - i) as f64 * lq);
    }
    s.min(1.0)
}

/// Upper limit of the one-sided confidence interval for an error rate
/// after observing `errors` in `n` trials: the `p` at which seeing at most
/// `errors` errors has probability `cf`.
pub fn binomial_upper_limit(errors: usize, n: usize, cf: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if errors >= n {
        return 1.0;
    }
    if errors == 0 {
        return 1.0 - powf(cf, 1.0 / n as f64);
    }
    let (mut lo, mut hi) = (errors as f64 / n as f64, 1.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if binomial_cdf(errors, n, mid) > cf {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn estimated_errors(counts: &ClassCounts, errors: usize, cf: f64) -> f64 {
    let n = counts.total();
    n as f64 * binomial_upper_limit(errors, n, cf)
}

/// Returns the pruned node and its estimated error count.
fn prune_node(node: &TreeNode, cf: f64) -> (TreeNode, f64) {
    let (pruned, subtree_est) = match node {
        TreeNode::Leaf { class, support } => {
            let e = support.total() - support.get(*class);
            return (node.clone(), estimated_errors(support, e, cf));
        }
        TreeNode::Symbolic { feature, branches } => {
            let mut est = 0.0;
            let branches = branches
                .iter()
                .map(|b| {
                    let (n, e) = prune_node(&b.node, cf);
                    est += e;
                    Branch {
                        values: b.values.clone(),
                        node: n,
                    }
                })
                .collect();
            (
                TreeNode::Symbolic {
                    feature: *feature,
                    branches,
                },
                est,
            )
        }
        TreeNode::Threshold {
            feature,
            threshold,
            le,
            gt,
            gt_first,
        } => {
            let (le, e1) = prune_node(le, cf);
            let (gt, e2) = prune_node(gt, cf);
            (
                TreeNode::Threshold {
                    feature: *feature,
                    threshold: *threshold,
                    le: Box::new(le),
                    gt: Box::new(gt),
                    gt_first: *gt_first,
                },
                e1 + e2,
            )
        }
    };
    let support = pruned.support();
    let Some(class) = support.majority() else {
        return (pruned, subtree_est);
    };
    let leaf_est = estimated_errors(&support, support.errors(), cf);
    if leaf_est <= subtree_est + TIE_EPS {
        (TreeNode::Leaf { class, support }, leaf_est)
    } else {
        (pruned, subtree_est)
    }
}

/// Bottom-up replacement of subtrees by leaves wherever the leaf's
/// pessimistic error estimate is no worse than the subtree's. Uses only the
/// leaf support counts recorded during growth.
pub fn prune_tree(t: &DecisionTree, cfg: &TreeConfig) -> DecisionTree {
    DecisionTree::new(prune_node(&t.root, cfg.cf).0, t.features)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{ClassLabel, Feature, FeatureMask};

    #[test]
    fn upper_limit_reference_values() {
        // E = 0: 1 - 0.25^(1/6) = 0.2063
        assert!((binomial_upper_limit(0, 6, 0.25) - 0.206299).abs() < 1e-5);
        // E = 1, N = 6: solve (1-p)^6 + 6p(1-p)^5 = 0.25  ->  p = 0.3895
        let u = binomial_upper_limit(1, 6, 0.25);
        assert!((binomial_cdf(1, 6, u) - 0.25).abs() < 1e-9);
        assert!((u - 0.3895).abs() < 1e-3);
        assert_eq!(binomial_upper_limit(3, 3, 0.25), 1.0);
        assert_eq!(binomial_upper_limit(0, 0, 0.25), 0.0);
    }

    #[test]
    fn same_class_children_collapse() {
        let leaf = |d, s| TreeNode::Leaf {
            class: ClassLabel::Sentential,
            support: ClassCounts {
                discourse: d,
                sentential: s,
                unknown: 0,
            },
        };
        let t = DecisionTree::new(
            TreeNode::Threshold {
                feature: Feature::PhrasePosition,
                threshold: 3,
                le: Box::new(leaf(1, 9)),
                gt: Box::new(leaf(0, 5)),
                gt_first: false,
            },
            FeatureMask::single(Feature::PhrasePosition),
        );
        let p = prune_tree(&t, &TreeConfig::default());
        assert!(p.root.is_leaf());
        assert_eq!(p.training_errors(), 1);
    }
}
