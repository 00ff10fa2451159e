//! The `anhom` command line: experiment files in, reports out.
//!
//! ```text
//! anhom [--output text|json] [--tolerance T] [--cap N] <command>
//!
//!   validate FILE
//!   coevents FILE [--epsilon E]
//!   classical-domain FILE
//!   predict FILE --event NAME [--epsilon E]
//!   demo three-slit|double-slit|coin [--n N] [--epsilon E]
//! ```
//!
//! Exit codes: 0 success, 1 model fails validation, 2 parse or usage error,
//! 3 cap exceeded, 4 total preclusion.

mod demo;
pub mod experiment;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Event;
use crate::coevent::{classical_domain, maximal_null_sets};
use crate::cournot::predict;
use crate::error::Error;
use crate::measure::{
    check_sum_rule, validate_decoherence, DecoherenceFunctional, ValidationReport,
};
use crate::Limits;

pub use experiment::{read_experiment, ExperimentFile, Model, ModelError, Options, ParseError};
pub use report::{ModelSummary, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_MODEL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_TOTAL_PRECLUSION: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    ThreeSlit,
    DoubleSlit,
    Coin,
}

#[derive(Debug, Parser)]
#[command(
    name = "anhom",
    version,
    about = "Co-event logic over finite history spaces"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Absolute tolerance for measure equality (overrides the file).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Largest history count for exhaustive scans (overrides the file).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the decoherence-functional axioms and the sum rule.
    Validate { file: PathBuf },
    /// Primitive preclusive co-events (approximate when --epsilon > 0).
    Coevents {
        file: PathBuf,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Finest partition on which every primitive co-event is classical.
    ClassicalDomain { file: PathBuf },
    /// Threshold verdict for a named event.
    Predict {
        file: PathBuf,
        #[arg(long)]
        event: String,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Built-in worked examples.
    Demo {
        #[arg(value_enum)]
        which: Demo,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
}

/// Why a command did not produce a normal report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(ParseError),
    /// The model failed validation; the report explains which checks.
    Invalid(Box<Report>),
    Model(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => EXIT_USAGE,
            Failure::Invalid(_) => EXIT_INVALID_MODEL,
            Failure::Model(e) => error_exit_code(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Model(e)
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::TotalPreclusion => EXIT_TOTAL_PRECLUSION,
        Error::InvalidEpsilon { .. } | Error::UnknownLabel(_) => EXIT_USAGE,
        _ => EXIT_INVALID_MODEL,
    }
}

/// Everything a process needs to print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub(crate) fn labels(e: &Event) -> Vec<String> {
    e.labels().into_iter().map(str::to_string).collect()
}

pub(crate) fn validation_value(report: &ValidationReport) -> Value {
    json!({
        "passed": report.passed(),
        "checks": report.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "violation": c.violation,
            "partial": c.partial,
        })).collect::<Vec<_>>(),
    })
}

/// Axioms plus, when the space is small enough, the sum rule.
pub(crate) fn full_validation(
    d: &DecoherenceFunctional,
    limits: &Limits,
    warnings: &mut Vec<String>,
) -> ValidationReport {
    let mut report = validate_decoherence(d, limits);
    if report.checks.iter().any(|c| c.partial) {
        warnings.push(format!(
            "weak positivity checked on singletons and the full space only ({} histories > cap {})",
            d.space().len(),
            limits.cap
        ));
    }
    match check_sum_rule(d, limits) {
        Ok(sum_rule) => report.extend(sum_rule),
        Err(Error::CapExceeded { size, cap, .. }) => warnings.push(format!(
            "sum rule not checked ({size} histories > triple cap {cap})"
        )),
        Err(e) => warnings.push(format!("sum rule not checked: {e}")),
    }
    report
}

struct Loaded {
    model: Model,
    limits: Limits,
    summary: ModelSummary,
    warnings: Vec<String>,
}

fn load(cli: &Cli, echo: &str, path: &Path) -> Result<Loaded, Failure> {
    let file = read_experiment(path).map_err(Failure::Parse)?;
    let mut model = file.model().map_err(|e| match e {
        ModelError::Parse(p) => Failure::Parse(p),
        ModelError::Invalid(e) => Failure::Invalid(Box::new(Report {
            command: echo.to_string(),
            model: None,
            results: json!({ "error": e.to_string() }),
            warnings: vec!["model fails validation".into()],
        })),
    })?;
    if let Some(t) = cli.tolerance {
        if !(t > 0.0) {
            return Err(Failure::Usage("--tolerance must be positive".into()));
        }
        model.options.tolerance = t;
        model.decoherence = model.decoherence.clone().with_tolerance(t);
    }
    if let Some(cap) = cli.cap {
        model.options.cap = cap;
    }
    let limits = Limits::default().with_cap(model.options.cap);
    let summary = ModelSummary::from_model(&model);
    let mut warnings = Vec::new();
    let validation = full_validation(&model.decoherence, &limits, &mut warnings);
    if !validation.passed() {
        warnings.push("model fails validation".into());
        return Err(Failure::Invalid(Box::new(Report {
            command: echo.to_string(),
            model: Some(summary),
            results: json!({ "validation": validation_value(&validation) }),
            warnings,
        })));
    }
    Ok(Loaded {
        model,
        limits,
        summary,
        warnings,
    })
}

/// Runs a parsed command. `echo` is recorded verbatim in the report.
pub fn execute(cli: &Cli, echo: &str) -> Result<Report, Failure> {
    let report = |loaded: Loaded, results: Value| Report {
        command: echo.to_string(),
        model: Some(loaded.summary),
        results,
        warnings: loaded.warnings,
    };
    match &cli.command {
        Command::Validate { file } => {
            let loaded = load(cli, echo, file)?;
            let mut w = Vec::new();
            let validation = full_validation(&loaded.model.decoherence, &loaded.limits, &mut w);
            Ok(report(
                loaded,
                json!({ "validation": validation_value(&validation) }),
            ))
        }
        Command::Coevents { file, epsilon } => {
            let loaded = load(cli, echo, file)?;
            let eps = epsilon.unwrap_or(0.0);
            let nulls = maximal_null_sets(&loaded.model.decoherence, eps, &loaded.limits)?;
            let coevents = nulls.primitive_coevents()?;
            Ok(report(
                loaded,
                json!({
                    "preclusion": if eps == 0.0 { "exact" } else { "approximate" },
                    "epsilon": eps,
                    "maximal_null_sets": nulls.maximal_null_sets.iter().map(labels).collect::<Vec<_>>(),
                    "duals": coevents.iter().map(|c| labels(c.dual())).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::ClassicalDomain { file } => {
            let loaded = load(cli, echo, file)?;
            let coevents =
                crate::coevent::enumerate_ppc(&loaded.model.decoherence, &loaded.limits)?;
            let domain = classical_domain(&coevents)?;
            Ok(report(
                loaded,
                json!({
                    "duals": coevents.iter().map(|c| labels(c.dual())).collect::<Vec<_>>(),
                    "blocks": domain.partition().blocks().iter().map(labels).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Predict {
            file,
            event,
            epsilon,
        } => {
            let loaded = load(cli, echo, file)?;
            let Some(target) = loaded.model.events.get(event).cloned() else {
                let known: Vec<&str> = loaded.model.events.keys().map(String::as_str).collect();
                return Err(Failure::Usage(format!(
                    "unknown event `{event}`; defined events: [{}]",
                    known.join(", ")
                )));
            };
            let eps = epsilon.unwrap_or(loaded.model.options.epsilon);
            let verdict = predict(&loaded.model.decoherence, target, eps)?;
            Ok(report(
                loaded,
                json!({
                    "event": event,
                    "members": labels(&verdict.event),
                    "measure": verdict.measure,
                    "epsilon": verdict.epsilon,
                    "outcome": verdict.outcome.to_string(),
                }),
            ))
        }
        Command::Demo { which, n, epsilon } => {
            let limits = Limits::default().with_cap(cli.cap.unwrap_or(Limits::default().cap));
            let tolerance = cli.tolerance.unwrap_or(crate::DEFAULT_TOLERANCE);
            let out = match which {
                Demo::ThreeSlit => demo::three_slit(*epsilon, tolerance, &limits)?,
                Demo::DoubleSlit => demo::double_slit(*n, *epsilon)?,
                Demo::Coin => demo::coin(*n, *epsilon, &limits)?,
            };
            Ok(Report {
                command: echo.to_string(),
                model: Some(out.model),
                results: out.results,
                warnings: out.warnings,
            })
        }
    }
}

fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json(),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                RunOutput {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    match execute(&cli, &echo) {
        Ok(report) => RunOutput {
            stdout: render(&report, cli.output),
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(Failure::Invalid(report)) => RunOutput {
            stdout: render(&report, cli.output),
            stderr: "error: model fails validation\n".into(),
            code: EXIT_INVALID_MODEL,
        },
        Err(failure) => {
            let message = match &failure {
                Failure::Usage(m) => m.clone(),
                Failure::Parse(p) => format!("parse error: {p}"),
                Failure::Model(e) => e.to_string(),
                Failure::Invalid(_) => unreachable!("handled above"),
            };
            RunOutput {
                stdout: String::new(),
                stderr: format!("error: {message}\n"),
                code: failure.exit_code(),
            }
        }
    }
}
