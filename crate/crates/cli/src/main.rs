//! `viforge` command-line front end.
//!
//! Exit codes: 0 yes / optimum found / certificate valid, 1 no / infeasible
//! / certificate invalid, 2 usage or parse error, 3 precondition failure
//! (including exhausted oracle budgets).

mod problems;
mod tools;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use viforge::format::{parse, serialize, Instance};
use viforge::{vertex_cover_min, vertex_integrity};

use problems::{Input, Outcome, Problem};
use tools::{GenArgs, Reduction};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<viforge::Error> for Failure {
    fn from(e: viforge::Error) -> Self {
        match e {
            viforge::Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            viforge::Error::Precondition(_) | viforge::Error::BudgetExceeded(_) => Failure::Precondition(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "viforge", version, about = "Exact solvers parameterized by vertex integrity")]
struct Cli {
    /// Emit a JSON result record.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel guess evaluation.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    problem: Problem,
    file: PathBuf,
    /// Second graph for mcs and mcis.
    second: Option<PathBuf>,
    /// Bound `r`, overriding the file's `r` line.
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the parameterized solver.
    Solve(RunArgs),
    /// Run the brute-force oracle (budget from VIFORGE_ORACLE_* variables).
    Oracle(RunArgs),
    /// Check a certificate: `verify <problem> <file> [second] <cert.json>`.
    Verify {
        problem: Problem,
        #[arg(num_args = 2..=3, required = true)]
        paths: Vec<PathBuf>,
        #[arg(long)]
        r: Option<u64>,
    },
    /// Report vertex integrity, vertex cover and component types.
    Params { file: PathBuf },
    /// Build a hardness-reduction target from a source instance.
    Reduce {
        kind: Reduction,
        file: PathBuf,
        /// Target instance path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Metadata JSON path (stdout when absent and --out is given).
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Generate a seeded random instance.
    Gen(GenArgs),
}

#[derive(Serialize)]
struct ParamReport {
    vi: usize,
    vc: usize,
    /// Parameter the solver ran with; absent for oracle runs.
    k: Option<usize>,
}

#[derive(Serialize)]
struct ResultRecord {
    problem: String,
    method: &'static str,
    instance_sha256: String,
    answer: &'static str,
    value: Option<Value>,
    certificate: Option<Value>,
    wall_time_ms: f64,
    params: ParamReport,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(Instance, String), Failure> {
    let text = read(path)?;
    let inst = parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok((inst, text))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_input(file: &Path, second: Option<&Path>, r: Option<u64>) -> Result<(Input, String), Failure> {
    let (first, text) = load(file)?;
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let second = match second {
        Some(p) => {
            let (inst, text2) = load(p)?;
            hasher.update([0u8]);
            hasher.update(text2.as_bytes());
            Some(inst)
        }
        None => None,
    };
    Ok((Input { first, second, r }, hex::encode(hasher.finalize())))
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn run_problem(args: &RunArgs, use_oracle: bool, json: bool) -> Result<ExitCode, Failure> {
    let (input, hash) = load_input(&args.file, args.second.as_deref(), args.r)?;
    let start = Instant::now();
    let outcome: Outcome = if use_oracle {
        problems::oracle(args.problem, &input)?
    } else {
        problems::solve(args.problem, &input)?
    };
    let wall = start.elapsed().as_secs_f64() * 1e3;
    let found = outcome.certificate.is_some();
    let answer = match (found, args.problem.is_decision()) {
        (true, true) => "yes",
        (true, false) => "optimum",
        (false, true) => "no",
        (false, false) => "infeasible",
    };
    if json {
        let g = &input.first.graph;
        let vi = vertex_integrity(g).0;
        let record = ResultRecord {
            problem: args.problem.name(),
            method: if use_oracle { "oracle" } else { "solver" },
            instance_sha256: hash,
            answer,
            value: outcome.value,
            certificate: outcome.certificate,
            wall_time_ms: wall,
            params: ParamReport { vi, vc: vertex_cover_min(g).len(), k: (!use_oracle).then_some(vi) },
        };
        println!("{}", pretty(&record));
    } else {
        match &outcome.value {
            Some(v) => println!("{answer} {v}"),
            None => println!("{answer}"),
        }
        if let Some(c) = &outcome.certificate {
            println!("{c}");
        }
    }
    Ok(if found { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Solve(args) => run_problem(args, false, cli.json),
        Command::Oracle(args) => run_problem(args, true, cli.json),
        Command::Verify { problem, paths, r } => {
            let (cert_path, files) = paths.split_last().expect("clap enforces at least two paths");
            let (input, _) = load_input(&files[0], files.get(1).map(PathBuf::as_path), *r)?;
            let record: Value = serde_json::from_str(&read(cert_path)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", cert_path.display())))?;
            match problems::verify(*problem, &input, &record)? {
                Ok(()) => {
                    println!("valid");
                    Ok(ExitCode::SUCCESS)
                }
                Err(why) => {
                    println!("invalid: {why}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Params { file } => {
            let (inst, _) = load(file)?;
            println!("{}", pretty(&tools::params(&inst.graph)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { kind, file, out, meta } => {
            let (source, _) = load(file)?;
            let (target, info) = tools::reduce(*kind, &source)?;
            write(out.as_deref(), &serialize(&target))?;
            match (meta, out) {
                (Some(p), _) => write(Some(p), &format!("{}\n", pretty(&info)))?,
                (None, Some(_)) => println!("{}", pretty(&info)),
                (None, None) => {}
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(args) => {
            print!("{}", serialize(&tools::generate(args)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("precondition: {msg}");
            ExitCode::from(3)
        }
    }
}
