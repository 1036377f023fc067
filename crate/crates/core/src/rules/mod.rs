//! Ordered if-then rule lists learned by separate-and-conquer.

mod learn;

use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

pub use learn::{grow_rule, laplace, learn_ruleset, prune_rule};

use crate::corpus::{ClassLabel, Feature, Features, Value};
use crate::model::Classifier;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Op {
    Eq,
    Neq,
    Le,
    Ge,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Eq, Op::Neq, Op::Le, Op::Ge];

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Eq => "=",
            Op::Neq => "≠",
            Op::Le => "≤",
            Op::Ge => "≥",
        }
    }

    /// `=` and `≠` apply to symbolic features, `≤` and `≥` to numeric ones.
    pub fn fits(self, feature: Feature) -> bool {
        matches!(self, Op::Le | Op::Ge) == feature.is_numeric()
    }

    pub(crate) fn holds(self, x: u32, v: u32) -> bool {
        match self {
            Op::Eq => x == v,
            Op::Neq => x != v,
            Op::Le => x <= v,
            Op::Ge => x >= v,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `feature op value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Test {
    pub feature: Feature,
    pub op: Op,
    pub value: Value,
}

impl Test {
    pub fn new(feature: Feature, op: Op, value: Value) -> Result<Self> {
        let kind_ok = match value {
            Value::Num(_) => feature.is_numeric(),
            Value::Sym(s) => !feature.is_numeric() && (s as usize) < feature.domain_size(),
        };
        if !op.fits(feature) || !kind_ok {
            return Err(Error::InvalidArgument(alloc::format!(
                "test {} {op} {value:?} does not fit the feature",
                feature.code()
            )));
        }
        Ok(Test { feature, op, value })
    }

    pub fn matches(&self, f: &Features) -> Result<bool> {
        let x = f
            .value(self.feature)
            .ok_or(Error::MissingValue(self.feature))?;
        Ok(self
            .op
            .holds(crate::table::encode(x), crate::table::encode(self.value)))
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Rule {
    /// Conjunction; empty means the rule always fires.
    pub tests: Vec<Test>,
    pub class: ClassLabel,
    /// Laplace accuracy on the training set. `None` for rules read from
    /// text, which carries only the ordering.
    pub accuracy: Option<f64>,
    /// Training examples the rule fires on.
    pub coverage: usize,
}

impl Rule {
    pub fn new(tests: Vec<Test>, class: ClassLabel) -> Self {
        Rule {
            tests,
            class,
            accuracy: None,
            coverage: 0,
        }
    }

    pub fn matches(&self, f: &Features) -> Result<bool> {
        for t in &self.tests {
            if !t.matches(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// How to pick among several rules that fire.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ConflictStrategy {
    /// Highest stored accuracy; earlier rule on ties.
    #[default]
    MostAccurate,
    /// The first rule that fires.
    First,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct RuleConfig {
    pub strategy: ConflictStrategy,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RuleSet {
    pub rules: Vec<Rule>,
    pub default_class: ClassLabel,
    #[cfg_attr(feature = "serde", serde(default))]
    pub strategy: ConflictStrategy,
}

impl RuleSet {
    pub fn new(rules: Vec<Rule>, default_class: ClassLabel) -> Self {
        RuleSet {
            rules,
            default_class,
            strategy: ConflictStrategy::MostAccurate,
        }
    }

    pub fn total_tests(&self) -> usize {
        self.rules.iter().map(|r| r.tests.len()).sum()
    }

    /// Index of the rule that decides `f`, or `None` for the default.
    pub fn firing_rule(&self, f: &Features) -> Result<Option<usize>> {
        let mut best: Option<usize> = None;
        for (i, r) in self.rules.iter().enumerate() {
            if !r.matches(f)? {
                continue;
            }
            match self.strategy {
                ConflictStrategy::First => return Ok(Some(i)),
                ConflictStrategy::MostAccurate => {
                    let better = match best {
                        None => true,
                        Some(b) => rank(&self.rules[i]) > rank(&self.rules[b]),
                    };
                    if better {
                        best = Some(i);
                    }
                }
            }
        }
        Ok(best)
    }

    /// Rules ordered so that first-match equals most-accurate: descending
    /// accuracy, original order among equals.
    pub fn sorted_by_accuracy(&self) -> RuleSet {
        let mut rules = self.rules.clone();
        rules.sort_by(|a, b| rank(b).partial_cmp(&rank(a)).unwrap_or(core::cmp::Ordering::Equal));
        RuleSet {
            rules,
            default_class: self.default_class,
            strategy: self.strategy,
        }
    }
}

fn rank(r: &Rule) -> f64 {
    r.accuracy.unwrap_or(-1.0)
}

impl Classifier for RuleSet {
    fn classify(&self, f: &Features) -> Result<ClassLabel> {
        Ok(match self.firing_rule(f)? {
            Some(i) => self.rules[i].class,
            None => self.default_class,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures::annotated_second;
    use crate::corpus::Composition;

    fn rule(class: ClassLabel, acc: f64) -> Rule {
        Rule {
            tests: Vec::new(),
            class,
            accuracy: Some(acc),
            coverage: 1,
        }
    }

    #[test]
    fn most_accurate_rule_wins() {
        let rs = RuleSet::new(
            alloc::vec![rule(ClassLabel::Discourse, 0.7), rule(ClassLabel::Sentential, 0.9)],
            ClassLabel::Discourse,
        );
        assert_eq!(rs.classify(&annotated_second().features), Ok(ClassLabel::Sentential));
        let first = RuleSet {
            strategy: ConflictStrategy::First,
            ..rs.clone()
        };
        assert_eq!(first.classify(&annotated_second().features), Ok(ClassLabel::Discourse));
        let sorted = rs.sorted_by_accuracy();
        assert_eq!(sorted.rules[0].class, ClassLabel::Sentential);
    }

    #[test]
    fn no_match_gives_default() {
        let t = Test::new(
            Feature::Composition,
            Op::Eq,
            Value::Sym(Composition::Only.index()),
        )
        .unwrap();
        let rs = RuleSet::new(
            alloc::vec![Rule::new(alloc::vec![t], ClassLabel::Discourse)],
            ClassLabel::Sentential,
        );
        assert_eq!(rs.classify(&annotated_second().features), Ok(ClassLabel::Sentential));
    }

    #[test]
    fn tests_must_fit_their_feature() {
        assert!(Test::new(Feature::PhrasePosition, Op::Eq, Value::Num(2)).is_err());
        assert!(Test::new(Feature::Accent, Op::Ge, Value::Sym(0)).is_err());
        assert!(Test::new(Feature::Accent, Op::Eq, Value::Sym(8)).is_err());
        assert!(Test::new(Feature::PhrasePosition, Op::Ge, Value::Num(2)).is_ok());
    }
}
