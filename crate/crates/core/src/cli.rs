//! The command-line front end: argument parsing, input loading, evaluation
//! and rendering of reports as JSON or text.
//!
//! Every report is deterministic. JSON objects have sorted keys, diagrams
//! appear in canonical order and coefficients are `p/q` strings in lowest
//! terms with a positive denominator.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::aarhus::aarhus_invariant;
use crate::acceptance;
use crate::brauer::format_word;
use crate::error::{Error, Result};
use crate::jacobi::vector::format_q;
use crate::jacobi::DVec;
use crate::kontsevich::{Kontsevich, MAX_DEGREE};
use crate::lmo::{h1_order, omega_partial, required_budget, zlmo, Variant};
use crate::tangles::linking::{linking, LinkingData};
use crate::tangles::parse::{parse, preset};
use crate::tangles::TangleProgram;

/// Exit status of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when the computation reports an error.
pub const EXIT_ERROR: i32 = 1;
/// Exit status when `selftest` finds a failing criterion.
pub const EXIT_SELFTEST_FAILED: i32 = 3;

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// What to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Underlying oriented Brauer diagram and component counts.
    Skeleton,
    /// Linking matrix, inertia and homology order.
    Linking,
    /// Degree-truncated Kontsevich integral; closed inputs get `ν` inserted.
    Z,
    /// Level-`n` invariant, known up to the degree the budget allows.
    Omega,
    /// Levels assembled into one series up to degree `N` (default `n`).
    Zlmo,
    /// Formal Gaussian integration route, complete up to degree one.
    Aarhus,
    /// Runs the acceptance criteria.
    Selftest,
}

/// Command-line arguments.
#[derive(Debug, Clone, Parser)]
#[command(name = "lmokit", version, about = "Exact finite-type invariants of framed links and surgery presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Built-in link such as `unknot f=3`, `hopf f1=0 f2=1`, `u+` or `u-`.
    #[arg(long, global = true, conflicts_with = "file")]
    pub preset: Option<String>,
    /// Tangle program in the line-oriented language.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Level.
    #[arg(long = "n", global = true, default_value_t = 1)]
    pub level: usize,
    /// Degree budget; defaults to the smallest complete budget.
    #[arg(long = "N", global = true)]
    pub budget: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Rescale level `k` by `|H₁|^{-k}`.
    #[arg(long, global = true)]
    pub tilde: bool,
}

/// Where the link comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    None,
    Preset(String),
    File(PathBuf),
}

/// A validated request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Input,
    pub level: usize,
    pub budget: Option<usize>,
    pub format: Format,
    pub tilde: bool,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        let input = match (c.preset, c.file) {
            (Some(p), _) => Input::Preset(p),
            (None, Some(f)) => Input::File(f),
            (None, None) => Input::None,
        };
        RunConfig { command: c.command, input, level: c.level, budget: c.budget, format: c.format, tilde: c.tilde }
    }
}

/// Rendered output of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

/// Evaluates a request and renders its report or its error object.
pub fn run(config: &RunConfig) -> Outcome {
    let result = if config.command == Command::Selftest { selftest() } else { evaluate(config) };
    match result {
        Ok((report, status)) => Outcome { status, output: render(&report, config.format) },
        Err(e) => Outcome { status: EXIT_ERROR, output: render(&error_report(&e), config.format) },
    }
}

/// The structured object emitted for an error.
pub fn error_report(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}

fn load(input: &Input) -> Result<(TangleProgram, Value)> {
    match input {
        Input::Preset(p) => Ok((preset(p)?, json!({ "preset": p.trim() }))),
        Input::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            Ok((parse(&text)?, json!({ "file": path.display().to_string() })))
        }
        Input::None => Err(Error::InvalidArgument("an input is required: pass --preset or --file".into())),
    }
}

fn check_budget(n: usize) -> Result<usize> {
    if n > MAX_DEGREE {
        return Err(Error::Budget(format!("degree budget {n} exceeds the compiled limit {MAX_DEGREE}")));
    }
    Ok(n)
}

fn check_level(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("the level starts at one".into()));
    }
    Ok(n)
}

fn terms_json(v: &DVec) -> Value {
    Value::Array(
        v.encoded_terms()
            .into_iter()
            .map(|(d, c)| json!({ "diagram": d, "coefficient": c }))
            .collect(),
    )
}

fn linking_json(lk: &LinkingData) -> Value {
    let h1 = h1_order(lk).map(|h| format_q(&h));
    json!({
        "matrix": lk.matrix,
        "sigma": { "plus": lk.sigma_plus, "minus": lk.sigma_minus, "zero": lk.sigma_zero },
        "h1_order": h1,
    })
}

fn evaluate(config: &RunConfig) -> Result<(Value, i32)> {
    let (l, source) = load(&config.input)?;
    let comps = l.components();
    let mut meta = json!({
        "components": comps.len(),
        "closed_components": comps.closed,
        "open_components": comps.open,
    });
    let result = match config.command {
        Command::Skeleton => {
            let (b, circles) = l.skeleton()?;
            let pairs: Vec<[usize; 2]> = b.unoriented_pairs().into_iter().map(|(a, c)| [a, c]).collect();
            json!({
                "source": format_word(&b.source()),
                "target": format_word(&b.target()),
                "pairs": pairs,
                "circles": circles,
            })
        }
        Command::Linking => linking_json(&linking(&l)?),
        Command::Z => {
            let budget = check_budget(config.budget.unwrap_or(2))?;
            meta["N"] = json!(budget);
            let k = Kontsevich::shared(budget)?;
            let (v, normalized) = if l.is_closed() { (k.normalized(&l)?, true) } else { (k.z_eval(&l)?, false) };
            json!({ "normalized": normalized, "max_degree": v.max_deg, "terms": terms_json(&v) })
        }
        Command::Omega => {
            let n = check_level(config.level)?;
            let budget = check_budget(config.budget.unwrap_or_else(|| required_budget(comps.closed, n)))?;
            let lk = linking(&l)?;
            meta["n"] = json!(n);
            meta["N"] = json!(budget);
            meta["sigma"] = json!({ "plus": lk.sigma_plus, "minus": lk.sigma_minus, "zero": lk.sigma_zero });
            let om = omega_partial(&l, n, budget)?;
            json!({
                "epsilon": format_q(&om.epsilon()),
                "known_degree": om.known_degree(),
                "complete": om.is_complete(),
                "terms": terms_json(&om.value),
            })
        }
        Command::Zlmo => {
            // The series is assembled up to degree `N` (or `n`); the integral
            // is then computed at the smallest budget that determines it.
            let degree = check_level(config.budget.unwrap_or(config.level))?;
            let budget = check_budget(required_budget(comps.closed, degree))?;
            let lk = linking(&l)?;
            meta["n"] = json!(degree);
            meta["N"] = json!(degree);
            meta["integral_budget"] = json!(budget);
            meta["sigma"] = json!({ "plus": lk.sigma_plus, "minus": lk.sigma_minus, "zero": lk.sigma_zero });
            let variant = if config.tilde { Variant::Tilde } else { Variant::Plain };
            let v = zlmo(&l, degree, budget, variant)?;
            json!({ "tilde": config.tilde, "terms": terms_json(&v) })
        }
        Command::Aarhus => {
            let budget = check_budget(config.budget.unwrap_or(MAX_DEGREE))?;
            let lk = linking(&l)?;
            meta["N"] = json!(budget);
            meta["sigma"] = json!({ "plus": lk.sigma_plus, "minus": lk.sigma_minus, "zero": lk.sigma_zero });
            let v = aarhus_invariant(&l, budget)?;
            json!({ "complete_degree": v.max_deg, "terms": terms_json(&v) })
        }
        Command::Selftest => unreachable!("handled before loading an input"),
    };
    let report = json!({
        "command": command_name(config.command),
        "input": source,
        "metadata": meta,
        "result": result,
    });
    Ok((report, EXIT_OK))
}

fn selftest() -> Result<(Value, i32)> {
    let lines: Vec<Value> = acceptance::run_all()
        .into_iter()
        .map(|r| {
            json!({
                "criterion": r.id,
                "title": r.title,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": format!("{:.3}", r.seconds),
            })
        })
        .collect();
    let passed = lines.iter().all(|l| l["passed"] == Value::Bool(true));
    let status = if passed { EXIT_OK } else { EXIT_SELFTEST_FAILED };
    Ok((json!({ "command": "selftest", "passed": passed, "criteria": lines }), status))
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Skeleton => "skeleton",
        Command::Linking => "linking",
        Command::Z => "z",
        Command::Omega => "omega",
        Command::Zlmo => "zlmo",
        Command::Aarhus => "aarhus",
        Command::Selftest => "selftest",
    }
}

/// Renders a report.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports are plain JSON values");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            text(report, "", &mut s);
            s
        }
    }
}

fn text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text(x, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}: {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}: {other}");
        }
    }
}
