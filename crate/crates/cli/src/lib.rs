//! Argument definitions and command implementations of the `intersective`
//! binary. Every command returns its stdout text and an exit code.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use intersective::group::StandardSet;
use intersective::lp::lambda::{Lambda, ModeChoice, Variant};
use intersective::parse::{parse_group, parse_set};
use intersective::random::{
    experiment_random_delta, experiment_random_lambda, experiment_threshold_23, RandomDeltaOptions,
    RandomModel, ThresholdOptions, TrialStats,
};
use intersective::report::{all_quantities, QuantityReport, ReportOptions};
use intersective::scalar::{render_decimal, round_sig12, Scalar};
use intersective::suites::{run_suite, Suite, SuiteOptions, VerificationSuiteResult};
use intersective::Error;

pub const SCHEMA: u64 = 1;

/// Environment variable that caps the worker thread count.
pub const THREADS_ENV: &str = "INTERSECTIVE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "intersective",
    version,
    about = "Intersectivity measures and λ-constants of standard sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute δ, λ⁻, λ, λ±, λ⁺ and δ̄ for one set.
    Compute(ComputeArgs),
    /// Run a theorem-verification suite.
    Verify(VerifyArgs),
    /// Run a random-set experiment.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Exact,
    Float,
}

impl From<ModeArg> for ModeChoice {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => ModeChoice::Auto,
            ModeArg::Exact => ModeChoice::Exact,
            ModeArg::Float => ModeChoice::Float,
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Group spec, e.g. Z12, Z2^5, Z4xZ3.
    #[arg(short, long)]
    pub group: String,
    /// Set spec, e.g. list:0,1,3, qr, ball:2, complement:(qr).
    #[arg(short, long)]
    pub set: String,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Include extremal sets and primal/dual functions.
    #[arg(long)]
    pub witness: bool,
    /// Lift the solver size guards.
    #[arg(long)]
    pub force: bool,
    /// Include wall-clock timing (makes output non-deterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// basic, duality, union, factor, product, ambient, dyadic or random.
    pub suite: String,
    #[arg(short, long)]
    pub group: Option<String>,
    /// Enumerate every standard set instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    /// Dimension of the dyadic suite.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled sets, pairs or trials.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub force: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    Randlambda,
    Threshold23,
    Randdelta,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub name: ExperimentName,
    #[arg(short, long)]
    pub group: String,
    #[arg(long)]
    pub rho: f64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Exponent parameter of the random λ experiment.
    #[arg(long, default_value_t = 1.5)]
    pub c: f64,
    /// Threshold of the random Δ̄ experiment.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Add one row per trial.
    #[arg(long)]
    pub emit_trials: bool,
    /// threshold23: also compute Δ̄ exactly and compare.
    #[arg(long)]
    pub cross_check: bool,
    /// randdelta: probability of a coupled superset sample.
    #[arg(long)]
    pub superset_rho: Option<f64>,
    #[arg(long)]
    pub force: bool,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidGroup(_)
        | Error::NotStandard(_)
        | Error::GroupMismatch(_)
        | Error::NotSubgroup(_)
        | Error::NotEmbedding(_)
        | Error::NotAutomorphism(_) => 2,
        Error::ModeUnavailable(_) | Error::Precondition(_) | Error::OutOfRange(_) => 3,
        Error::SizeGuard(_) => 4,
        Error::Consistency(_) | Error::Solver(_) => 1,
    }
}

/// Sizes the global thread pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be a positive integer"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(o) => o,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Rounds every float in `v` to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n
                .as_f64()
                .map(round_sig12)
                .and_then(serde_json::Number::from_f64)
            {
                *n = x;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(m) => m.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_json(mut v: Value) -> String {
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn with_schema(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

fn element_labels(a: &StandardSet, xs: &[usize]) -> Vec<String> {
    xs.iter()
        .map(|&x| a.group().element(x).to_string())
        .collect()
}

fn function_json(l: &Lambda, dual: bool) -> Value {
    match l {
        Lambda::Exact(r) => {
            let f = if dual { &r.dual } else { &r.primal };
            json!(f.values().iter().map(Scalar::render).collect::<Vec<_>>())
        }
        Lambda::Float(r) => {
            let f = if dual { &r.dual } else { &r.primal };
            json!(f.values())
        }
    }
}

/// JSON form of a [`QuantityReport`].
pub fn report_json(group: &str, set: &str, r: &QuantityReport, witness: bool) -> Value {
    let a = &r.set;
    let mut quantities = Map::new();
    for e in r.chain() {
        quantities.insert(
            e.key.into(),
            json!({ "value": e.rendered, "decimal": render_decimal(e.value) }),
        );
    }
    let mut body = json!({
        "group": group,
        "set": set,
        "order": a.group().order(),
        "elements": element_labels(a, &a.elements()),
        "mode": r.mode,
        "tolerance": r.tolerance,
        "quantities": quantities,
        "counts": { "delta": r.delta_count, "delta_bar": r.delta_bar_count },
        "chain": "ok",
    });
    if witness {
        let mut lambdas = Map::new();
        for v in Variant::ALL {
            let l = r.lambda(v);
            lambdas.insert(
                v.key().into(),
                json!({ "primal": function_json(l, false), "dual": function_json(l, true) }),
            );
        }
        body["witnesses"] = json!({
            "delta": element_labels(a, &r.delta_witness.elements),
            "delta_bar": element_labels(a, &r.delta_bar_witness.elements),
            "functions": lambdas,
        });
    }
    body
}

fn report_table(group: &str, set: &str, r: &QuantityReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("group     {group} (q = {})\n", r.q()));
    out.push_str(&format!("set       {set} ({} elements)\n", r.set.size()));
    out.push_str(&format!(
        "mode      {} (tolerance {})\n",
        r.mode, r.tolerance
    ));
    out.push_str(&format!(
        "{:<9} {:<24} {}\n",
        "quantity", "value", "decimal"
    ));
    for e in r.chain() {
        let name = match e.key {
            "delta" => "δ",
            "lambda_minus" => "λ⁻",
            "lambda" => "λ",
            "lambda_pm" => "λ±",
            "lambda_plus" => "λ⁺",
            "delta_bar" => "δ̄",
            other => other,
        };
        out.push_str(&format!(
            "{:<9} {:<24} {}\n",
            name,
            e.rendered,
            render_decimal(e.value)
        ));
    }
    out.push_str(&format!(
        "Δ = {}, Δ̄ = {}\nchain     ok\n",
        r.delta_count, r.delta_bar_count
    ));
    out
}

fn compute(a: &ComputeArgs) -> Result<Outcome, Error> {
    let g = parse_group(&a.group)?;
    let set = parse_set(&g, &a.set)?;
    let start = Instant::now();
    let r = all_quantities(
        &set,
        &ReportOptions {
            mode: a.mode.into(),
            force: a.force,
        },
    )?;
    let elapsed = start.elapsed();
    let stdout = match a.format {
        Format::Json => {
            let mut body = report_json(&a.group, &a.set, &r, a.witness);
            if a.timing {
                body["timing_ms"] = json!(elapsed.as_secs_f64() * 1e3);
            }
            to_json(with_schema("compute", body))
        }
        Format::Table => {
            let mut t = report_table(&a.group, &a.set, &r);
            if a.timing {
                t.push_str(&format!("time      {:.3} s\n", elapsed.as_secs_f64()));
            }
            t
        }
    };
    Ok(Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let suite: Suite = a.suite.parse()?;
    let group = a.group.as_deref().map(parse_group).transpose()?;
    let opts = SuiteOptions {
        group,
        exhaustive: a.exhaustive,
        mode: a.mode.into(),
        n: a.n,
        seed: a.seed,
        samples: a.samples,
        force: a.force,
    };
    let r = run_suite(suite, &opts)?;
    let code = if r.passed() { 0 } else { 1 };
    let stdout = match a.format {
        Format::Json => to_json(with_schema(
            "verify",
            serde_json::to_value(&r).expect("serializable"),
        )),
        Format::Table => suite_table(&r),
    };
    let stderr = r
        .failures
        .iter()
        .map(|f| format!("FAIL [{}] {}: {}\n", f.case, f.check, f.detail))
        .collect();
    Ok(Outcome {
        code,
        stdout,
        stderr,
    })
}

fn suite_table(r: &VerificationSuiteResult) -> String {
    let mut out = format!(
        "suite {}: {} cases, {} checks, {} failures\n",
        r.suite,
        r.cases,
        r.checks,
        r.failures.len()
    );
    for m in &r.modes {
        out.push_str(&format!("  mode {} {}\n", m.group, m.mode));
    }
    for (k, v) in &r.observations {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    for f in &r.failures {
        out.push_str(&format!("  FAIL [{}] {}: {}\n", f.case, f.check, f.detail));
    }
    out
}

fn preconditions(name: ExperimentName) -> &'static [&'static str] {
    match name {
        ExperimentName::Randlambda => &[
            "1 < c",
            "c < q/(32 log q)",
            "16c·log q/q < ρ",
            "ρ < 1 − 16c·log q/q",
        ],
        ExperimentName::Threshold23 => &["3 ∤ q", "6/(5q) < ρ", "ρ < q^(−2/3)"],
        ExperimentName::Randdelta => &["q ≤ 512"],
    }
}

fn experiment(a: &ExperimentArgs) -> Result<Outcome, Error> {
    let g = parse_group(&a.group)?;
    let model = RandomModel::new(&g, a.rho, a.seed)?;
    let mut stats: TrialStats = match a.name {
        ExperimentName::Randlambda => experiment_random_lambda(&model, a.trials, a.c)?,
        ExperimentName::Threshold23 => experiment_threshold_23(
            &model,
            a.trials,
            &ThresholdOptions {
                cross_check: a.cross_check,
            },
        )?,
        ExperimentName::Randdelta => experiment_random_delta(
            &model,
            a.trials,
            a.m,
            &RandomDeltaOptions {
                superset_rho: a.superset_rho,
                force: a.force,
            },
        )?,
    };
    let passed = stats.passed();
    if !a.emit_trials {
        stats.records.clear();
    }
    let mut body = serde_json::to_value(&stats).expect("serializable");
    if !a.emit_trials {
        body.as_object_mut().expect("object").remove("records");
    }
    body["preconditions"] = json!(preconditions(a.name));
    body["passed"] = json!(passed);
    let stderr = stats
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| {
            format!(
                "FAIL {}: observed {} vs limit {}\n",
                c.name, c.observed, c.limit
            )
        })
        .collect();
    Ok(Outcome {
        code: if passed { 0 } else { 1 },
        stdout: to_json(with_schema("experiment", body)),
        stderr,
    })
}
