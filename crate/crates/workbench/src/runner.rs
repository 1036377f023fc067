//! Runs an experiment plan: every feature set by every learner by every
//! subset, cross-validated or held out.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use cuephrase_core::corpus::{builtin_feature_sets, Dataset, ExperimentSet, FeatureSetSpec};
use cuephrase_core::eval::{cross_validate_with, error_rate, fold_error, holdout_ci, CvOptions, ErrorEstimate, FoldAssignment};
use cuephrase_core::LearnerSpec;

use crate::corpus_file::parse_corpus;
use crate::error::{Result, WorkbenchError};
use crate::plan::{ExperimentPlan, Mode, Subset};
use crate::report::{Report, Row, Section};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldRecord {
    pub subset: Subset,
    pub n: usize,
    pub folds: FoldAssignment,
}

/// Everything needed to audit and replay a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunLog {
    pub plan: ExperimentPlan,
    pub inputs: Vec<InputDigest>,
    /// Fold assignments for cross-validated runs, one per subset. Every
    /// learner and feature set of a subset shares them.
    pub folds: Vec<FoldRecord>,
    pub report: Report,
}

impl RunLog {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("run logs always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

struct Source {
    data: Dataset,
    digest: InputDigest,
}

fn load(path: &Path) -> Result<Source> {
    let bytes = std::fs::read(path).map_err(|source| WorkbenchError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| WorkbenchError::parse(1, None, "corpus is not UTF-8").in_file(path))?;
    let data = parse_corpus(&text, &path.display().to_string()).map_err(|e| e.in_file(path))?;
    Ok(Source {
        data,
        digest: InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        },
    })
}

/// One table cell's worth of work.
struct Job<'a> {
    learner: &'a LearnerSpec,
    spec: Option<&'a FeatureSetSpec>,
    mode: Option<Mode>,
    subset: Subset,
}

struct Design<'a> {
    plan: &'a ExperimentPlan,
    train: &'a Dataset,
    test: Option<&'a Dataset>,
}

impl Design<'_> {
    fn project(&self, d: &Dataset, spec: Option<&FeatureSetSpec>) -> Result<Dataset> {
        match spec {
            Some(s) => Ok(d.project(s)?),
            None => Ok(d.clone()),
        }
    }

    fn cv_options(&self, mode: Option<Mode>) -> CvOptions {
        CvOptions {
            k: self.plan.k,
            seed: self.plan.seed,
            stratified: self.plan.stratified,
            train_classifiable_only: mode == Some(Mode::TwoClass),
        }
    }

    fn run(&self, job: &Job) -> Result<ErrorEstimate> {
        let seed = self.plan.seed;
        match self.test {
            Some(test) => {
                let mut train = self.project(self.train, job.spec)?;
                if job.subset != Subset::All || job.mode == Some(Mode::TwoClass) {
                    train = train.filter_classifiable();
                }
                let test = self.project(&job.subset.select(test), job.spec)?;
                let model = job.learner.fit(&train, seed)?;
                Ok(holdout_ci(error_rate(&model, &test)?, test.len())?)
            }
            None => {
                let data = self.project(&job.subset.select(self.train), job.spec)?;
                if job.learner.is_manual() {
                    // Nothing to train: score the whole subset once.
                    let model = job.learner.fit(&data, seed)?;
                    return Ok(holdout_ci(error_rate(&model, &data)?, data.len())?);
                }
                let opts = self.cv_options(job.mode);
                let run = cross_validate_with(&data, &opts, |folds| {
                    (0..opts.k)
                        .into_par_iter()
                        .map(|f| fold_error(job.learner, &data, folds, f, &opts))
                        .collect()
                })?;
                Ok(run.estimate)
            }
        }
    }
}

fn title(plan: &ExperimentPlan) -> String {
    let design = if plan.cv {
        format!("{}-fold cross-validation", plan.k)
    } else {
        "held-out test set".to_string()
    };
    match plan.set {
        Some(s) => format!("experiment set {s}, {design}, seed {}", plan.seed),
        None => format!("{design}, seed {}", plan.seed),
    }
}

fn feature_sets(plan: &ExperimentPlan, set: Option<ExperimentSet>, train: &Dataset) -> Result<Vec<FeatureSetSpec>> {
    if let Some(set) = set {
        return Ok(builtin_feature_sets(set));
    }
    if plan.features.is_empty() {
        return Ok(vec![FeatureSetSpec::new("all", train.available)]);
    }
    plan.features
        .iter()
        .map(|s| FeatureSetSpec::resolve(s).map_err(|e| WorkbenchError::Usage(e.to_string())))
        .collect()
}

/// Runs `plan` and returns its log. Output order follows the plan, and
/// results are the same for any number of worker threads.
pub fn run_plan(plan: &ExperimentPlan) -> Result<RunLog> {
    let plan = plan.normalized()?;
    match plan.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| WorkbenchError::Internal(e.to_string()))?
            .install(|| execute(&plan)),
        None => execute(&plan),
    }
}

fn execute(plan: &ExperimentPlan) -> Result<RunLog> {
    let set = plan.experiment_set()?;
    let learners = plan.learner_specs()?;
    let train = load(plan.train.as_deref().expect("normalized plan has train"))?;
    let test = plan.test.as_deref().map(load).transpose()?;
    let specs = feature_sets(plan, set, &train.data)?;
    let modes: Vec<Option<Mode>> = if set == Some(ExperimentSet::Four) {
        vec![Some(Mode::TwoClass), Some(Mode::ThreeClass)]
    } else {
        vec![None]
    };

    let design = Design {
        plan,
        train: &train.data,
        test: test.as_ref().map(|t| &t.data),
    };

    // Sections in plan order: mode, then learner. Hand-built models ignore
    // the feature set and get a single row.
    let mut layout: Vec<(Section, &LearnerSpec, Vec<Option<&FeatureSetSpec>>)> = Vec::new();
    for &mode in &modes {
        for learner in &learners {
            let rows: Vec<Option<&FeatureSetSpec>> = if learner.is_manual() {
                vec![None]
            } else {
                specs.iter().map(Some).collect()
            };
            let section = Section {
                learner: learner.name().to_string(),
                mode,
                rows: Vec::new(),
            };
            layout.push((section, learner, rows));
        }
    }
    let mut jobs = Vec::new();
    for (section, learner, rows) in &layout {
        for &spec in rows {
            for &subset in &plan.subsets {
                jobs.push(Job {
                    learner,
                    spec,
                    mode: section.mode,
                    subset,
                });
            }
        }
    }
    let estimates: Vec<ErrorEstimate> = jobs.par_iter().map(|j| design.run(j)).collect::<Result<_>>()?;

    let mut it = estimates.into_iter();
    let mut sections = Vec::new();
    for (mut section, _, rows) in layout {
        for spec in rows {
            let name = spec.map_or_else(|| section.learner.clone(), |s| s.name.clone());
            let estimates = plan.subsets.iter().map(|_| it.next().expect("one estimate per job")).collect();
            section.rows.push(Row { name, estimates });
        }
        sections.push(section);
    }

    let mut folds = Vec::new();
    if plan.cv {
        for &subset in &plan.subsets {
            let data = subset.select(&train.data);
            folds.push(FoldRecord {
                subset,
                n: data.len(),
                folds: design.cv_options(None).folds(&data)?,
            });
        }
    }
    let mut inputs = vec![train.digest];
    inputs.extend(test.map(|t| t.digest));
    Ok(RunLog {
        plan: ExperimentPlan {
            jobs: None,
            ..plan.clone()
        },
        inputs,
        folds,
        report: Report {
            title: title(plan),
            subsets: plan.subsets.clone(),
            sections,
        },
    })
}
