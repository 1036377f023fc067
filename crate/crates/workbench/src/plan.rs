//! Experiment plans: what to run, on which data, with which seed.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use cuephrase_core::corpus::{Dataset, ExperimentSet};
use cuephrase_core::LearnerSpec;

use crate::error::{Result, WorkbenchError};

/// Which examples a model is trained and scored on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subset {
    /// Examples both judges called discourse or sentential.
    Classifiable,
    /// Classifiable examples other than `and`, `or` and `but`.
    NonConjuncts,
    /// Every example, `unknown` included.
    All,
}

impl Subset {
    pub fn name(self) -> &'static str {
        match self {
            Subset::Classifiable => "classifiable",
            Subset::NonConjuncts => "non_conjuncts",
            Subset::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Subset> {
        match s.trim().replace('-', "_").as_str() {
            "classifiable" => Ok(Subset::Classifiable),
            "non_conjuncts" => Ok(Subset::NonConjuncts),
            "all" => Ok(Subset::All),
            _ => Err(WorkbenchError::Usage(format!(
                "unknown subset {s:?} (expected classifiable, non_conjuncts or all)"
            ))),
        }
    }

    pub fn select(self, d: &Dataset) -> Dataset {
        match self {
            Subset::Classifiable => d.filter_classifiable(),
            Subset::NonConjuncts => d.filter_classifiable().filter_non_conjuncts(),
            Subset::All => d.clone(),
        }
    }
}

/// How models in experiment set 4 treat `unknown`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Trained on classifiable examples only, scored on everything.
    #[serde(rename = "2-class")]
    TwoClass,
    /// Trained and scored on everything; `unknown` is learnable.
    #[serde(rename = "3-class")]
    ThreeClass,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::TwoClass => "2-class",
            Mode::ThreeClass => "3-class",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentPlan {
    /// Experiment set 1-4, or none for an ad hoc evaluation of `features`.
    pub set: Option<u8>,
    pub train: Option<PathBuf>,
    pub test: Option<PathBuf>,
    /// Cross-validate on `train` instead of testing on `test`.
    pub cv: bool,
    pub k: usize,
    pub seed: u64,
    pub stratified: bool,
    pub subsets: Vec<Subset>,
    pub learners: Vec<String>,
    /// Feature sets for ad hoc runs: built-in names or code lists. Empty
    /// means every column the corpus has.
    pub features: Vec<String>,
    /// Worker threads. Results do not depend on it, and run logs omit it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            set: None,
            train: None,
            test: None,
            cv: false,
            k: 10,
            seed: 0,
            stratified: false,
            subsets: vec![Subset::Classifiable, Subset::NonConjuncts],
            learners: vec!["dtree".into(), "rules".into()],
            features: Vec::new(),
            jobs: None,
        }
    }
}

impl ExperimentPlan {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn experiment_set(&self) -> Result<Option<ExperimentSet>> {
        self.set
            .map(|s| ExperimentSet::try_from(s).map_err(|e| WorkbenchError::Usage(e.to_string())))
            .transpose()
    }

    pub fn learner_specs(&self) -> Result<Vec<LearnerSpec>> {
        if self.learners.is_empty() {
            return Err(WorkbenchError::Usage("no learners given".into()));
        }
        self.learners
            .iter()
            .map(|l| LearnerSpec::parse(l).map_err(|e| WorkbenchError::Usage(e.to_string())))
            .collect()
    }

    /// Checks the source layout each design needs and applies the set 4
    /// subset rule. Returns the plan actually run.
    pub fn normalized(&self) -> Result<ExperimentPlan> {
        let usage = |m: &str| Err(WorkbenchError::Usage(m.to_string()));
        let mut p = self.clone();
        if p.k < 2 {
            return usage("k must be at least 2");
        }
        if p.subsets.is_empty() {
            return usage("no subsets given");
        }
        p.learner_specs()?;
        if p.train.is_none() {
            return usage("a training corpus (--train) is required");
        }
        match p.experiment_set()? {
            Some(ExperimentSet::One) => {
                if p.cv || p.test.is_none() {
                    return usage("experiment set 1 holds out: give --train and --test, not --cv");
                }
            }
            Some(set) => {
                if !p.cv || p.test.is_some() {
                    return usage("experiment sets 2-4 cross-validate: give --cv and --train only");
                }
                if set == ExperimentSet::Four {
                    p.subsets = vec![Subset::All];
                }
            }
            None => {
                if p.cv == p.test.is_some() {
                    return usage("give either --cv or --test");
                }
            }
        }
        if !p.features.is_empty() && p.set.is_some() {
            return usage("--features applies only without --set");
        }
        let mut seen = Vec::new();
        p.subsets.retain(|s| {
            let fresh = !seen.contains(s);
            seen.push(*s);
            fresh
        });
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_plan() {
        let p = ExperimentPlan::from_toml(
            "set = 2\ntrain = \"c.tsv\"\ncv = true\nseed = 7\nsubsets = [\"non_conjuncts\"]\n",
        )
        .unwrap();
        assert_eq!(p.set, Some(2));
        assert_eq!(p.k, 10);
        assert_eq!(p.subsets, [Subset::NonConjuncts]);
        assert!(p.normalized().is_ok());
        assert!(ExperimentPlan::from_toml("sett = 2\n").is_err());
    }

    #[test]
    fn set_designs_are_enforced() {
        let base = ExperimentPlan {
            train: Some("a".into()),
            ..ExperimentPlan::default()
        };
        let one = ExperimentPlan { set: Some(1), cv: true, ..base.clone() };
        assert!(matches!(one.normalized(), Err(WorkbenchError::Usage(_))));
        let one = ExperimentPlan { set: Some(1), test: Some("b".into()), ..base.clone() };
        assert!(one.normalized().is_ok());
        let four = ExperimentPlan { set: Some(4), cv: true, ..base.clone() };
        assert_eq!(four.normalized().unwrap().subsets, [Subset::All]);
        let five = ExperimentPlan { set: Some(5), cv: true, ..base.clone() };
        assert!(five.normalized().is_err());
        let bad = ExperimentPlan { learners: vec!["c4.5".into()], cv: true, ..base };
        assert!(bad.normalized().is_err());
    }
}
