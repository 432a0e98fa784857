use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use condgrad::bench;
use condgrad::certify::{self, CertifyError};
use condgrad::config::{Problem, Validation};
use condgrad::report;
use condgrad::solver::{self, Termination};

const EXIT_INVALID_CONFIG: u8 = 1;
const EXIT_UNBOUNDED: u8 = 2;
const EXIT_MAX_ITERATIONS: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 4;
/// Runtime failures that are not a property of the input (I/O, numerics).
const EXIT_RUNTIME: u8 = 5;

/// Samples drawn by `check` for each condition.
const CHECK_SAMPLES: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "condgrad", version, about = "Conditional gradient solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a problem and write its trace as CSV.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Test the Lipschitz and dual-cone conditions for a problem.
    Check {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a benchmark suite.
    Bench {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn env_seed() -> Result<Option<u64>, String> {
    match std::env::var("FW_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("FW_SEED: cannot parse `{s}` as an unsigned integer")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("FW_SEED: {e}")),
    }
}

fn load(path: &Path, validation: Validation) -> Result<Problem, ExitCode> {
    let mut problem = Problem::load(path, validation).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_INVALID_CONFIG)
    })?;
    match env_seed() {
        Ok(Some(seed)) => problem.seed = seed,
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return Err(ExitCode::from(EXIT_INVALID_CONFIG));
        }
    }
    Ok(problem)
}

fn cmd_solve(config: PathBuf, out: PathBuf) -> ExitCode {
    let p = match load(&config, Validation::Strict) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let trace = match solver::solve(&p.objective, &p.set, &p.x0, &p.solver) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };
    if let Err(e) = report::write_trace_csv(&out, &trace) {
        eprintln!("error: {}: {e}", out.display());
        return ExitCode::from(EXIT_RUNTIME);
    }
    println!("termination: {}", trace.termination.label());
    println!("iterations: {}", trace.records.len());
    // An unbounded first subproblem leaves no records; the iterate is x0.
    let last_x = trace.last().map_or(&p.x0, |r| &r.x);
    println!("final f: {}", p.objective.value(last_x));
    match certify::stationarity_residual(&p.objective, &p.set, last_x) {
        Ok(r) => println!("stationarity residual: {r}"),
        Err(CertifyError::OracleUnbounded) => println!("stationarity residual: n/a"),
        Err(e) => println!("stationarity residual: n/a ({e})"),
    }
    match trace.termination {
        Termination::GapBelowTolerance => ExitCode::SUCCESS,
        Termination::OracleUnbounded { .. } => ExitCode::from(EXIT_UNBOUNDED),
        Termination::MaxIterations { .. } => ExitCode::from(EXIT_MAX_ITERATIONS),
    }
}

fn cmd_check(config: PathBuf) -> ExitCode {
    let p = match load(&config, Validation::Structural) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let a = certify::check_condition_a(
        &p.objective,
        &p.set,
        CHECK_SAMPLES,
        p.seed,
        p.solver.lipschitz_override,
    );
    let b = certify::check_condition_b(&p.objective, &p.set, CHECK_SAMPLES, p.seed);
    let (a, b) = match (a, b) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };
    println!(
        "lipschitz: declared L = {}, max ratio = {} over {} pairs: {}",
        a.declared,
        a.max_ratio,
        a.pairs,
        verdict(a.passed)
    );
    println!(
        "dual cone: min margin = {} over {} points: {}",
        b.min_margin,
        b.samples,
        verdict(b.passed)
    );
    if a.passed && b.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn cmd_bench(suite: String, out: PathBuf) -> ExitCode {
    let seed = match env_seed() {
        Ok(s) => s.unwrap_or(0),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID_CONFIG);
        }
    };
    let outcomes = match bench::run_suite(&suite, &out, seed) {
        Ok(o) => o,
        Err(e @ bench::BenchError::UnknownSuite(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID_CONFIG);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };
    let mut all = true;
    for o in &outcomes {
        let ok = o.passed();
        all &= ok;
        println!(
            "{:<18} iters {:>6}  rate {}  decrease {}  distance {}  A {}  B {}  {}",
            o.problem,
            o.summary.iters,
            o.summary.rate_ok,
            o.summary.decrease_ok,
            o.distance_ok.map_or("n/a".to_owned(), |d| d.to_string()),
            o.condition_a,
            o.condition_b,
            if ok { "ok" } else { "FAILED" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve { config, out } => cmd_solve(config, out),
        Command::Check { config } => cmd_check(config),
        Command::Bench { suite, out } => cmd_bench(suite, out),
    }
}
