//! The classifier interface and a closed sum of every model kind.

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::baselines::{fit_default_class, BaselineModel};
use crate::corpus::{ClassLabel, Dataset, Example, Features};
use crate::dtree::{grow_tree, prune_tree, DecisionTree, TreeConfig};
use crate::rules::{learn_ruleset, RuleConfig, RuleSet};
use crate::{Error, Result};

pub trait Classifier {
    fn classify(&self, features: &Features) -> Result<ClassLabel>;

    fn predict(&self, example: &Example) -> Result<ClassLabel> {
        self.classify(&example.features)
    }
}

impl<C: Classifier + ?Sized> Classifier for &C {
    fn classify(&self, features: &Features) -> Result<ClassLabel> {
        (**self).classify(features)
    }
}

/// A trained model of any kind.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Model {
    Tree(DecisionTree),
    Rules(RuleSet),
    Baseline(BaselineModel),
}

impl Classifier for Model {
    fn classify(&self, features: &Features) -> Result<ClassLabel> {
        match self {
            Model::Tree(t) => t.classify(features),
            Model::Rules(r) => r.classify(features),
            Model::Baseline(b) => b.classify(features),
        }
    }
}

/// How to obtain a model from training data.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "learner", rename_all = "kebab-case"))]
pub enum LearnerSpec {
    #[cfg_attr(feature = "serde", serde(rename = "dtree"))]
    Tree(TreeConfig),
    Rules(RuleConfig),
    ManualProsodic,
    ManualTextual,
    #[cfg_attr(feature = "serde", serde(rename = "default"))]
    DefaultClass,
}

impl LearnerSpec {
    pub const NAMES: [&'static str; 5] =
        ["dtree", "rules", "manual-prosodic", "manual-textual", "default"];

    pub fn name(&self) -> &'static str {
        match self {
            LearnerSpec::Tree(_) => "dtree",
            LearnerSpec::Rules(_) => "rules",
            LearnerSpec::ManualProsodic => "manual-prosodic",
            LearnerSpec::ManualTextual => "manual-textual",
            LearnerSpec::DefaultClass => "default",
        }
    }

    /// Parses a learner name with default configuration. Underscores are
    /// accepted in place of hyphens.
    pub fn parse(name: &str) -> Result<Self> {
        let norm = name.replace('_', "-");
        Ok(match norm.as_str() {
            "dtree" | "tree" => LearnerSpec::Tree(TreeConfig::default()),
            "rules" => LearnerSpec::Rules(RuleConfig::default()),
            "manual-prosodic" => LearnerSpec::ManualProsodic,
            "manual-textual" => LearnerSpec::ManualTextual,
            "default" | "default-class" => LearnerSpec::DefaultClass,
            _ => {
                return Err(Error::InvalidArgument(alloc::format!(
                    "unknown learner {name:?}"
                )))
            }
        })
    }

    /// True for models that learn nothing from the data.
    pub fn is_manual(&self) -> bool {
        matches!(self, LearnerSpec::ManualProsodic | LearnerSpec::ManualTextual)
    }

    /// Trains on `d` using its active features. `seed` only matters for the
    /// rule learner's grow/prune splits.
    pub fn fit(&self, d: &Dataset, seed: u64) -> Result<Model> {
        let features = d.active.features;
        Ok(match self {
            LearnerSpec::Tree(cfg) => {
                let grown = grow_tree(d, features, cfg)?;
                Model::Tree(prune_tree(&grown, cfg))
            }
            LearnerSpec::Rules(cfg) => Model::Rules(learn_ruleset(d, features, seed, cfg)?),
            LearnerSpec::ManualProsodic => Model::Baseline(BaselineModel::ManualProsodic),
            LearnerSpec::ManualTextual => Model::Baseline(BaselineModel::ManualTextual),
            LearnerSpec::DefaultClass => Model::Baseline(fit_default_class(d)?),
        })
    }
}
