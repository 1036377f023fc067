use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cuephrase::corpus_file::{read_corpus, read_features, write_corpus};
use cuephrase::error::{read_file, write_file, Result, WorkbenchError};
use cuephrase::model_io::{model_to_json, read_model, write_model_text};
use cuephrase::plan::{ExperimentPlan, Subset};
use cuephrase::report::format_report;
use cuephrase::runner::{run_plan, RunLog};
use cuephrase_core::baselines::BaselineModel;
use cuephrase_core::corpus::{generate_synthetic, FeatureSetSpec, SyntheticConfig};
use cuephrase_core::{Classifier, LearnerSpec, Model};

#[derive(Parser)]
#[command(name = "cuephrase", version, about = "Train and evaluate cue-phrase classifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a corpus file, print its statistics, and optionally write
    /// it back out in normal form.
    Ingest {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit one model and print its text form.
    Train(TrainArgs),
    /// Label each row of a feature file with a stored or hand-built model.
    Predict {
        /// Model file (.json or text) or manual-prosodic / manual-textual.
        #[arg(long)]
        model: String,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate error rates, for ad hoc feature sets or a whole
    /// experiment set.
    Evaluate(EvaluateArgs),
    /// Generate a labeled synthetic corpus.
    Synth {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// manual-prosodic, manual-textual, or a model file.
        #[arg(long, default_value = "manual-prosodic")]
        labeler: String,
        #[arg(long, default_value_t = 15)]
        max_length: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the tables stored in run logs.
    Report { logs: Vec<PathBuf> },
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    train: PathBuf,
    /// dtree, rules, manual-prosodic, manual-textual or default.
    #[arg(long)]
    model: String,
    /// Built-in feature-set name or comma-separated codes. Defaults to
    /// every column in the corpus.
    #[arg(long)]
    features: Option<String>,
    #[arg(long, default_value = "classifiable")]
    subset: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write <OUT>.txt and <OUT>.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// TOML plan; flags override its values.
    #[arg(long)]
    plan: Option<PathBuf>,
    #[arg(long)]
    set: Option<u8>,
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long)]
    test: Option<PathBuf>,
    #[arg(long)]
    cv: bool,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    subset: Vec<String>,
    /// Learners to run; repeat or separate with commas.
    #[arg(long, value_delimiter = ',')]
    model: Vec<String>,
    /// Feature sets; repeat for several.
    #[arg(long)]
    features: Vec<String>,
    #[arg(long)]
    stratified: bool,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the run log (JSON) here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn usage<T>(e: impl std::fmt::Display) -> Result<T> {
    Err(WorkbenchError::Usage(e.to_string()))
}

fn ingest(input: &Path, out: Option<&Path>) -> Result<()> {
    let d = read_corpus(input)?;
    let stats = d.stats();
    let classifiable = d.filter_classifiable();
    eprintln!(
        "{}: {} examples ({} discourse, {} sentential, {} unknown); {} classifiable, {} classifiable non-conjuncts",
        input.display(),
        d.len(),
        stats.classes.discourse,
        stats.classes.sentential,
        stats.classes.unknown,
        classifiable.len(),
        classifiable.filter_non_conjuncts().len(),
    );
    if let Some(out) = out {
        write_out(Some(out), &write_corpus(&d))?;
    }
    Ok(())
}

fn train(a: &TrainArgs) -> Result<()> {
    let learner = LearnerSpec::parse(&a.model).or_else(usage)?;
    let subset = Subset::parse(&a.subset)?;
    let d = subset.select(&read_corpus(&a.train)?);
    let d = match &a.features {
        Some(f) => d.project(&FeatureSetSpec::resolve(f).or_else(usage)?)?,
        None => d,
    };
    let model = learner.fit(&d, a.seed)?;
    let text = write_model_text(&model);
    if let Some(prefix) = &a.out {
        let with = |ext: &str| {
            let mut p = prefix.clone().into_os_string();
            p.push(ext);
            PathBuf::from(p)
        };
        write_out(Some(&with(".txt")), &text)?;
        write_out(Some(&with(".json")), &model_to_json(&model))?;
    }
    write_out(None, &text)
}

fn load_labeler(name: &str) -> Result<Model> {
    match LearnerSpec::parse(name) {
        Ok(LearnerSpec::ManualProsodic) => Ok(Model::Baseline(BaselineModel::ManualProsodic)),
        Ok(LearnerSpec::ManualTextual) => Ok(Model::Baseline(BaselineModel::ManualTextual)),
        Ok(_) => usage(format!("{name} must be trained first; pass a model file")),
        Err(_) => read_model(Path::new(name)),
    }
}

fn predict(model: &str, test: &Path, out: Option<&Path>) -> Result<()> {
    let model = load_labeler(model)?;
    let (rows, _) = read_features(test)?;
    let mut text = String::new();
    for (i, f) in rows.iter().enumerate() {
        let c = model
            .classify(f)
            .map_err(|e| WorkbenchError::parse(i + 2, None, e.to_string()).in_file(test))?;
        text.push_str(c.name());
        text.push('\n');
    }
    write_out(out, &text)
}

fn evaluate(a: &EvaluateArgs) -> Result<()> {
    let mut plan = match &a.plan {
        Some(p) => {
            let text = read_file(p)?;
            ExperimentPlan::from_toml(&text).map_err(|e| e.in_file(p))?
        }
        None => ExperimentPlan::default(),
    };
    if a.set.is_some() {
        plan.set = a.set;
    }
    if a.train.is_some() {
        plan.train = a.train.clone();
    }
    if a.test.is_some() {
        plan.test = a.test.clone();
    }
    plan.cv |= a.cv;
    plan.stratified |= a.stratified;
    if let Some(k) = a.k {
        plan.k = k;
    }
    if let Some(s) = a.seed {
        plan.seed = s;
    }
    if !a.subset.is_empty() {
        plan.subsets = a.subset.iter().map(|s| Subset::parse(s)).collect::<Result<_>>()?;
    }
    if !a.model.is_empty() {
        plan.learners = a.model.clone();
    }
    if !a.features.is_empty() {
        plan.features = a.features.clone();
    }
    if a.jobs.is_some() {
        plan.jobs = a.jobs;
    }
    let log = run_plan(&plan)?;
    if let Some(out) = &a.out {
        write_out(Some(out), &log.to_json())?;
    }
    write_out(None, &format_report(&log.report))
}

fn synth(n: usize, noise: f64, seed: u64, labeler: &str, max_length: u32, out: Option<&Path>) -> Result<()> {
    let model = load_labeler(labeler)?;
    let cfg = SyntheticConfig {
        max_length,
        ..SyntheticConfig::new(n, noise, seed)
    };
    let d = generate_synthetic(&model, &cfg).map_err(|e| match e {
        cuephrase_core::Error::InvalidArgument(m) => WorkbenchError::Usage(m),
        e => e.into(),
    })?;
    write_out(out, &write_corpus(&d))
}

fn report(logs: &[PathBuf]) -> Result<()> {
    if logs.is_empty() {
        return usage("no run logs given");
    }
    let mut text = String::new();
    for (i, p) in logs.iter().enumerate() {
        let json = read_file(p)?;
        let log = RunLog::from_json(&json).map_err(|e| e.in_file(p))?;
        if i > 0 {
            text.push('\n');
        }
        text.push_str(&format_report(&log.report));
    }
    write_out(None, &text)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest { input, out } => ingest(&input, out.as_deref()),
        Command::Train(a) => train(&a),
        Command::Predict { model, test, out } => predict(&model, &test, out.as_deref()),
        Command::Evaluate(a) => evaluate(&a),
        Command::Synth {
            n,
            noise,
            seed,
            labeler,
            max_length,
            out,
        } => synth(n, noise, seed, &labeler, max_length, out.as_deref()),
        Command::Report { logs } => report(&logs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("cuephrase: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(3),
    }
}
