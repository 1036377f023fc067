//! Gain-ratio decision trees with error-based pruning.

mod prune;
mod split;

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

pub use prune::{binomial_upper_limit, prune_tree};
pub use split::{
    best_split, entropy, gain_ratio, info_gain, split_info, Candidate, SplitTest,
};

use crate::corpus::{ClassCounts, ClassLabel, Dataset, Feature, FeatureMask, Features};
use crate::model::Classifier;
use crate::table::{encode, Table};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct TreeConfig {
    /// A test must send at least this many examples down two branches.
    pub min_cases: usize,
    /// Pruning confidence level.
    pub cf: f64,
    /// Merge symbolic values into shared branches.
    pub grouping: bool,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            min_cases: 2,
            cf: 0.25,
            grouping: false,
        }
    }
}

impl TreeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_cases == 0 {
            return Err(Error::InvalidArgument("min_cases must be at least 1".into()));
        }
        if !(self.cf > 0.0 && self.cf <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "cf must be in (0, 1], got {}",
                self.cf
            )));
        }
        Ok(())
    }
}

/// Branch of a symbolic test: the symbol indices routed to it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Branch {
    pub values: Vec<u8>,
    pub node: TreeNode,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "node", rename_all = "snake_case"))]
pub enum TreeNode {
    /// `support` holds the training examples that reached the leaf; it is
    /// all zeros for trees read from text.
    Leaf {
        class: ClassLabel,
        support: ClassCounts,
    },
    Symbolic {
        feature: Feature,
        branches: Vec<Branch>,
    },
    Threshold {
        feature: Feature,
        threshold: u32,
        le: Box<TreeNode>,
        gt: Box<TreeNode>,
        /// Write the `>` branch first. Learned trees never set this.
        #[cfg_attr(feature = "serde", serde(default))]
        gt_first: bool,
    },
}

impl TreeNode {
    pub fn leaf(class: ClassLabel) -> Self {
        TreeNode::Leaf {
            class,
            support: ClassCounts::default(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeNode::Leaf { .. })
    }

    pub fn children(&self) -> Vec<&TreeNode> {
        match self {
            TreeNode::Leaf { .. } => Vec::new(),
            TreeNode::Symbolic { branches, .. } => branches.iter().map(|b| &b.node).collect(),
            TreeNode::Threshold { le, gt, .. } => alloc::vec![&**le, &**gt],
        }
    }

    /// Number of nodes, leaves included.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children().iter().map(|c| c.leaf_count()).sum()
        }
    }

    pub fn depth(&self) -> usize {
        self.children().iter().map(|c| 1 + c.depth()).max().unwrap_or(0)
    }

    /// Sum of the leaves' support counts.
    pub fn support(&self) -> ClassCounts {
        match self {
            TreeNode::Leaf { support, .. } => *support,
            _ => {
                let mut c = ClassCounts::default();
                for child in self.children() {
                    c.merge(&child.support());
                }
                c
            }
        }
    }

    /// Training examples at leaves whose class differs from theirs.
    pub fn training_errors(&self) -> usize {
        match self {
            TreeNode::Leaf { class, support } => support.total() - support.get(*class),
            _ => self.children().iter().map(|c| c.training_errors()).sum(),
        }
    }

    /// Features tested anywhere in the subtree.
    pub fn tested_features(&self) -> FeatureMask {
        let mut m = match self {
            TreeNode::Leaf { .. } => FeatureMask::EMPTY,
            TreeNode::Symbolic { feature, .. } | TreeNode::Threshold { feature, .. } => {
                FeatureMask::single(*feature)
            }
        };
        for c in self.children() {
            m = m | c.tested_features();
        }
        m
    }

    pub fn classify(&self, f: &Features) -> Result<ClassLabel> {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { class, .. } => return Ok(*class),
                TreeNode::Symbolic { feature, branches } => {
                    let v = f.value(*feature).ok_or(Error::MissingValue(*feature))?;
                    let v = encode(v) as u8;
                    node = &branches
                        .iter()
                        .find(|b| b.values.contains(&v))
                        .ok_or(Error::NoBranch(*feature))?
                        .node;
                }
                TreeNode::Threshold {
                    feature,
                    threshold,
                    le,
                    gt,
                    ..
                } => {
                    let v = f.value(*feature).ok_or(Error::MissingValue(*feature))?;
                    node = if encode(v) <= *threshold { le } else { gt };
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DecisionTree {
    pub root: TreeNode,
    /// Features the tree was trained with (a superset of those tested).
    pub features: FeatureMask,
}

impl DecisionTree {
    pub fn new(root: TreeNode, features: FeatureMask) -> Self {
        DecisionTree { root, features }
    }

    pub fn size(&self) -> usize {
        self.root.size()
    }

    pub fn training_errors(&self) -> usize {
        self.root.training_errors()
    }
}

impl Classifier for DecisionTree {
    fn classify(&self, f: &Features) -> Result<ClassLabel> {
        self.root.classify(f)
    }
}

fn grow_node(t: &Table, rows: Vec<usize>, cfg: &TreeConfig) -> TreeNode {
    let counts = t.counts(&rows);
    let majority = counts.majority().expect("grow_node on nonempty rows");
    let leaf = TreeNode::Leaf {
        class: majority,
        support: counts,
    };
    if counts.is_pure() || rows.len() < 2 * cfg.min_cases {
        return leaf;
    }
    let Some(best) = split::best_split_rows(t, &rows, cfg) else {
        return leaf;
    };
    let child = |sub: Vec<usize>| {
        if sub.is_empty() {
            TreeNode::leaf(majority)
        } else {
            grow_node(t, sub, cfg)
        }
    };
    let j = t.features.iter().position(|&f| f == best.test.feature()).unwrap();
    let col = &t.cols[j];
    match best.test {
        SplitTest::Symbolic { feature, groups } => {
            let branches = groups
                .into_iter()
                .map(|values| {
                    let sub = rows
                        .iter()
                        .copied()
                        .filter(|&i| values.contains(&(col[i] as u8)))
                        .collect();
                    Branch {
                        values,
                        node: child(sub),
                    }
                })
                .collect();
            TreeNode::Symbolic { feature, branches }
        }
        SplitTest::Threshold { feature, threshold } => {
            let (le, gt): (Vec<usize>, Vec<usize>) =
                rows.iter().partition(|&&i| col[i] <= threshold);
            TreeNode::Threshold {
                feature,
                threshold,
                le: Box::new(child(le)),
                gt: Box::new(child(gt)),
                gt_first: false,
            }
        }
    }
}

/// Grows an unpruned tree on `d` restricted to `features`.
///
/// Recursion stops at pure nodes, at nodes with fewer than
/// `2 * min_cases` examples, and where no test is admissible. Symbolic
/// branches that receive no examples become leaves of the parent's
/// majority class.
pub fn grow_tree(d: &Dataset, features: FeatureMask, cfg: &TreeConfig) -> Result<DecisionTree> {
    cfg.validate()?;
    if d.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let t = Table::new(d, features)?;
    let rows = (0..t.len()).collect();
    Ok(DecisionTree::new(grow_node(&t, rows, cfg), features))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures::{annotated_first, annotated_second};
    use crate::corpus::{Composition, Example, Value};

    fn ex1() -> Dataset {
        Dataset::new(alloc::vec![annotated_first(), annotated_second()], "ex1")
    }

    #[test]
    fn two_rows_split_on_composition() {
        let cfg = TreeConfig {
            min_cases: 1,
            ..TreeConfig::default()
        };
        let ic = FeatureMask::single(Feature::Composition);
        let c = best_split(&ex1(), ic, &cfg).unwrap().unwrap();
        assert_eq!(c.test.feature(), Feature::Composition);
        let t = grow_tree(&ex1(), ic, &cfg).unwrap();
        assert_eq!(t.training_errors(), 0);
        assert_eq!(t.root.support().total(), 2);
        assert_eq!(t.classify(&annotated_first().features), Ok(ClassLabel::Discourse));
    }

    #[test]
    fn pure_data_gives_no_split_and_a_leaf() {
        let d = ex1().filter(|e| e.class() == ClassLabel::Discourse);
        let all = FeatureMask::all();
        assert_eq!(best_split(&d, all, &TreeConfig::default()).unwrap(), None);
        let t = grow_tree(&d, all, &TreeConfig::default()).unwrap();
        assert!(t.root.is_leaf());
    }

    #[test]
    fn threshold_on_position() {
        let mut rows = Vec::new();
        for pp in 1..=6u32 {
            let mut f = annotated_second().features;
            f.phrase_position = Some(pp);
            let class = if pp == 1 {
                ClassLabel::Discourse
            } else {
                ClassLabel::Sentential
            };
            rows.push(Example::with_class(f, class));
            rows.push(Example::with_class(f, class));
        }
        let d = Dataset::new(rows, "pp");
        let t = grow_tree(&d, FeatureMask::single(Feature::PhrasePosition), &TreeConfig::default())
            .unwrap();
        match &t.root {
            TreeNode::Threshold { threshold, .. } => assert_eq!(*threshold, 1),
            other => panic!("expected a threshold test, got {other:?}"),
        }
        assert_eq!(t.training_errors(), 0);
    }

    #[test]
    fn missing_branch_value_is_an_error() {
        let root = TreeNode::Symbolic {
            feature: Feature::Composition,
            branches: alloc::vec![Branch {
                values: alloc::vec![Composition::Only.index()],
                node: TreeNode::leaf(ClassLabel::Discourse),
            }],
        };
        let t = DecisionTree::new(root, FeatureMask::single(Feature::Composition));
        assert_eq!(
            t.classify(&annotated_second().features),
            Err(Error::NoBranch(Feature::Composition))
        );
        assert_eq!(t.classify(&Features::default()), Err(Error::MissingValue(Feature::Composition)));
        let _ = Value::Num(0);
    }
}
