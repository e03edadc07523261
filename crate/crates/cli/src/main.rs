//! `tensor-deflate` command-line front end.
//!
//! Exit codes: 0 success or a true answer, 1 a false answer, 2 usage, I/O
//! or parse errors, 3 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tensor_deflate::critical::verify_critical;
use tensor_deflate::deflation::{
    deflate, delta_sign, hyperdeterminant_222, sc10_experiment, Sc10Sampling, Termination,
};
use tensor_deflate::io;
use tensor_deflate::locus::{dl2_membership_222, weakly_odeco_symmetric};
use tensor_deflate::stabilization::{table_generate, TABLE_D, TABLE_N};
use tensor_deflate::{Error, Policy, SolverConfig, Tensor, DEFAULT_TOL};

const THREADS_VAR: &str = "TENSOR_DEFLATE_THREADS";

#[derive(Parser)]
#[command(name = "tensor-deflate", version, about = "Critical rank-one approximations and deflation chains")]
struct Cli {
    /// Write a run manifest (command, parameters, seed, outputs) as JSON.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print and optionally save the stabilization-step table.
    StabTable(StabTableArgs),
    /// Run a deflation chain on a tensor.
    Deflate(DeflateArgs),
    /// Check whether a rank-one term is a critical approximation of a tensor.
    Verify(VerifyArgs),
    /// Generate a weakly odeco symmetric tensor.
    OdecoGen(OdecoGenArgs),
    /// Evaluate the three 2×2×2 rank-two data-locus components.
    Dl2Test(Dl2TestArgs),
    /// Evaluate Cayley's hyperdeterminant of a 2×2×2 tensor.
    Hyperdet(HyperdetArgs),
    /// Rank-increase experiment on random real 2×2×2 tensors.
    Sc10(Sc10Args),
}

#[derive(Args, Serialize)]
struct StabTableArgs {
    #[arg(long, default_value_t = TABLE_N.0)]
    n_min: u64,
    #[arg(long, default_value_t = TABLE_N.1)]
    n_max: u64,
    #[arg(long, default_value_t = TABLE_D.0)]
    d_min: u64,
    #[arg(long, default_value_t = TABLE_D.1)]
    d_max: u64,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct DeflateArgs {
    #[arg(long)]
    input: PathBuf,
    /// `best`, `random[:SEED]` or `index:K`.
    #[arg(long, default_value = "best")]
    policy: String,
    #[arg(long, default_value_t = 20)]
    max_steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    starts: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// JSON-lines chain log.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    term: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Serialize)]
struct OdecoGenArgs {
    /// Isotropic frame size.
    #[arg(long, default_value_t = 0)]
    s: usize,
    /// Number of real terms orthogonal to the frame.
    #[arg(long)]
    t: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tensor output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Decomposition output path.
    #[arg(long)]
    decomposition: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct Dl2TestArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Serialize)]
struct HyperdetArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Sampling {
    Generic,
    Diagonal,
}

#[derive(Args, Serialize)]
struct Sc10Args {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Sampling::Generic)]
    sampling: Sampling,
    /// Per-trial CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonFinite(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// What a command produced: exit status, files written, parameters.
struct Outcome {
    code: u8,
    outputs: Vec<PathBuf>,
}

impl Outcome {
    fn ok(outputs: Vec<PathBuf>) -> Self {
        Outcome { code: 0, outputs }
    }
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    config: Value,
    seed: Option<u64>,
    tool_version: String,
    outputs: Vec<PathBuf>,
}

/// Shortest round-trip text; exponent form outside `[1e-4, 1e16)`.
fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn read_tensor(path: &Path) -> Result<Tensor<f64>, Failure> {
    let src = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    io::tensor_from_json(&src).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn dense_222(t: Tensor<f64>) -> Result<tensor_deflate::DenseTensor<f64>, Failure> {
    match t {
        Tensor::Dense(d) if d.shape() == [2, 2, 2] => Ok(d),
        Tensor::Dense(d) => Err(Failure::usage(format!("expected shape [2, 2, 2], got {:?}", d.shape()))),
        Tensor::Symmetric(_) => Err(Failure::usage("expected a dense 2x2x2 tensor")),
    }
}

fn stab_table(a: &StabTableArgs) -> Result<Outcome, Failure> {
    if a.n_min > a.n_max || a.d_min > a.d_max {
        return Err(Failure::usage("empty range: min must not exceed max"));
    }
    if a.n_min < 1 || a.d_min < 1 {
        return Err(Failure::usage("n and d must be >= 1"));
    }
    let table = table_generate((a.n_min, a.n_max), (a.d_min, a.d_max));
    print!("{}", table.to_ascii());
    if table.outside_table() {
        eprintln!(
            "note: cells outside n in {}..={}, d in {}..={} are extrapolated",
            TABLE_N.0, TABLE_N.1, TABLE_D.0, TABLE_D.1
        );
    }
    let mut outputs = Vec::new();
    if let Some(out) = &a.out {
        write_file(out, &table.to_csv())?;
        outputs.push(out.clone());
    }
    Ok(Outcome::ok(outputs))
}

fn run_deflate(a: &DeflateArgs) -> Result<Outcome, Failure> {
    let t = read_tensor(&a.input)?;
    let policy: Policy = a.policy.parse()?;
    let cfg = SolverConfig {
        tol: a.tol,
        num_starts: a.starts,
        seed: a.seed,
        ..SolverConfig::default()
    };
    let chain = deflate(&t, policy, &cfg, a.max_steps)?;
    let mut outputs = Vec::new();
    if let Some(log) = &a.log {
        write_file(log, &io::chain_to_jsonl(&chain))?;
        outputs.push(log.clone());
    }
    print!("{} steps={} final_norm={}", chain.termination, chain.len(), num(chain.final_norm));
    if let Tensor::Dense(r) = &chain.residual {
        if r.shape() == [2, 2, 2] {
            // zero band relative to the input, as the residual may be tiny
            let band = a.tol * chain.initial_norm.powi(4);
            let sign = tensor_deflate::deflation::delta_sign_with(r, band)?;
            print!(" residual_delta_sign={sign}");
        }
    }
    println!();
    if chain.termination == Termination::NoCriticalPointFound {
        return Err(Failure::numerical(format!(
            "no certified critical point at step {}",
            chain.len()
        )));
    }
    Ok(Outcome::ok(outputs))
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let t = read_tensor(&a.input)?;
    let src = fs::read_to_string(&a.term).map_err(|e| Failure::usage(format!("{}: {e}", a.term.display())))?;
    let term = io::term_from_json::<f64>(&src).map_err(|e| Failure::usage(format!("{}: {e}", a.term.display())))?;
    let (ok, residual) = verify_critical(&t, &term, a.tol)?;
    println!("{} residual={}", if ok { "critical" } else { "not-critical" }, num(residual));
    Ok(Outcome { code: if ok { 0 } else { 1 }, outputs: Vec::new() })
}

fn odeco_gen(a: &OdecoGenArgs) -> Result<Outcome, Failure> {
    let (t, dec) = weakly_odeco_symmetric::<f64>(a.s, a.t, a.n, a.d, a.seed)?;
    let text = io::tensor_to_json(&Tensor::Symmetric(t));
    let mut outputs = Vec::new();
    match &a.out {
        Some(out) => {
            write_file(out, &(text + "\n"))?;
            outputs.push(out.clone());
        }
        None => println!("{text}"),
    }
    if let Some(path) = &a.decomposition {
        write_file(path, &(io::decomposition_to_value(&dec).to_string() + "\n"))?;
        outputs.push(path.clone());
    }
    Ok(Outcome::ok(outputs))
}

fn dl2_test(a: &Dl2TestArgs) -> Result<Outcome, Failure> {
    let t = dense_222(read_tensor(&a.input)?)?;
    let m = dl2_membership_222(&t, a.tol)?;
    println!(
        "component1={} component2={} component3={}",
        m.component1, m.component2, m.component3
    );
    Ok(Outcome { code: if m.count() > 0 { 0 } else { 1 }, outputs: Vec::new() })
}

fn hyperdet(a: &HyperdetArgs) -> Result<Outcome, Failure> {
    let t = dense_222(read_tensor(&a.input)?)?;
    let delta = hyperdeterminant_222(&t)?;
    if delta.im == 0.0 {
        println!("{}", num(delta.re));
    } else {
        println!("{} {}", num(delta.re), num(delta.im));
    }
    if t.max_imag() == 0.0 {
        println!("sign={}", delta_sign(&t, a.tol)?);
    }
    Ok(Outcome::ok(Vec::new()))
}

fn sc10(a: &Sc10Args) -> Result<Outcome, Failure> {
    let sampling = match a.sampling {
        Sampling::Generic => Sc10Sampling::Generic,
        Sampling::Diagonal => Sc10Sampling::Diagonal,
    };
    let summary = sc10_experiment(a.trials, a.seed, sampling)?;
    println!(
        "trials={} negative={} positive={} zero_at_tol={} failed={} rank_three={}",
        a.trials, summary.negative, summary.positive, summary.zero_at_tol, summary.failed, summary.rank_three
    );
    let mut outputs = Vec::new();
    if let Some(out) = &a.out {
        write_file(out, &summary.to_csv())?;
        outputs.push(out.clone());
    }
    Ok(Outcome::ok(outputs))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn describe(cmd: &Command) -> (&'static str, Value, Option<u64>) {
    fn v<T: Serialize>(x: &T) -> Value {
        serde_json::to_value(x).unwrap_or(Value::Null)
    }
    match cmd {
        Command::StabTable(a) => ("stab-table", v(a), None),
        Command::Deflate(a) => ("deflate", v(a), Some(a.seed)),
        Command::Verify(a) => ("verify", v(a), None),
        Command::OdecoGen(a) => ("odeco-gen", v(a), Some(a.seed)),
        Command::Dl2Test(a) => ("dl2-test", v(a), None),
        Command::Hyperdet(a) => ("hyperdet", v(a), None),
        Command::Sc10(a) => ("sc10", v(a), Some(a.seed)),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    configure_threads()?;
    let outcome = match &cli.command {
        Command::StabTable(a) => stab_table(a),
        Command::Deflate(a) => run_deflate(a),
        Command::Verify(a) => run_verify(a),
        Command::OdecoGen(a) => odeco_gen(a),
        Command::Dl2Test(a) => dl2_test(a),
        Command::Hyperdet(a) => hyperdet(a),
        Command::Sc10(a) => sc10(a),
    }?;
    if let Some(path) = &cli.manifest {
        let (command, config, seed) = describe(&cli.command);
        let manifest = RunManifest {
            command: command.to_string(),
            config,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: outcome.outputs.clone(),
        };
        let text = serde_json::to_string_pretty(&json!(manifest)).map_err(|e| Failure::usage(e.to_string()))?;
        write_file(path, &(text + "\n"))?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => ExitCode::from(o.code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
