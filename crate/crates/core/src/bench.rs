//! The shipped benchmark suite.
//!
//! Every problem is stored as config text, so `condgrad solve` can replay any
//! row of the suite from a file.

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::certify::{self, CertifyError, ReferenceMethod, ReferenceSolution};
use crate::config::{ConfigError, Problem, Validation};
use crate::report::{self, SummaryRow};
use crate::solver::{self, SolveTrace, SolverError, Termination};

pub const SUITES: &[&str] = &["paper"];

/// Samples used by the per-problem condition checks.
const CONDITION_SAMPLES: usize = 200;
const STATIONARY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown suite `{0}` (available: paper)")]
    UnknownSuite(String),
    #[error("problem {problem}: {source}")]
    Config {
        problem: &'static str,
        source: ConfigError,
    },
    #[error("problem {problem}: {source}")]
    Solver {
        problem: &'static str,
        source: SolverError,
    },
    #[error("problem {problem}: {source}")]
    Certify {
        problem: &'static str,
        source: CertifyError,
    },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

#[derive(Debug, Clone, Copy)]
pub struct BenchProblem {
    pub name: &'static str,
    pub config: &'static str,
}

macro_rules! problem {
    ($name:literal, $($line:literal),+ $(,)?) => {
        BenchProblem {
            name: $name,
            config: concat!($($line, "\n"),+),
        }
    };
}

const SHIPPED: &[BenchProblem] = &[
    problem!(
        "quad_demo",
        "objective.kind = quadratic",
        "objective.a = 1 1",
        "objective.Q = 1 0 0 1",
        "set.kind = halfspace_simplex",
        "solver.x0 = 1 0",
    ),
    problem!(
        "quad_product",
        "objective.kind = quadratic",
        "objective.a = 1 1",
        "objective.Q = 1 0 0 1",
        "set.kind = product_set",
        "solver.x0 = 2 1",
    ),
    problem!(
        "quad_polyhedron",
        "objective.kind = quadratic",
        "objective.a = 1 0.5",
        "objective.Q = 2 0.5 0.5 1",
        "set.kind = polyhedron",
        "set.A = 1 1 1 2",
        "set.b = 1 2",
        "solver.x0 = 2 2",
    ),
    problem!(
        "quad_monotone",
        "objective.kind = quadratic",
        "objective.a = 1 2 0.5",
        "objective.Q = 1 0 0 0 2 0 0 0 1.5",
        "set.kind = monotone_cone",
        "solver.x0 = 3 2 1",
    ),
    problem!(
        "regnorm_monotone",
        "objective.kind = regularized_norm",
        "objective.a = 1 1 1",
        "objective.alpha = 1",
        "objective.beta = 0.1",
        "set.kind = monotone_cone",
        "solver.x0 = 2 1 0.5",
    ),
    problem!(
        "regnorm_orthant",
        "objective.kind = regularized_norm",
        "objective.a = 0.5 1",
        "objective.alpha = 1",
        "objective.beta = 0.1",
        "set.kind = orthant",
        "solver.x0 = 1 2",
    ),
    problem!(
        "regnorm_simplex",
        "objective.kind = regularized_norm",
        "objective.a = 1 1",
        "objective.alpha = 1",
        "objective.beta = 0.1",
        "set.kind = halfspace_simplex",
        "solver.x0 = 1 0",
    ),
    problem!(
        "sqrt_monotone",
        "objective.kind = sqrt_quadratic",
        "objective.a = 1 1 1",
        "objective.beta = 1",
        "set.kind = monotone_cone",
        "solver.x0 = 3 2 1",
    ),
    problem!(
        "sqrt_simplex",
        "objective.kind = sqrt_quadratic",
        "objective.a = 1 2",
        "objective.beta = 1",
        "set.kind = halfspace_simplex",
        "solver.x0 = 0 1",
    ),
    problem!(
        "sqrt_polyhedron",
        "objective.kind = sqrt_quadratic",
        "objective.a = 2 1",
        "objective.beta = 1",
        "set.kind = polyhedron",
        "set.A = 1 1 1 2",
        "set.b = 1 2",
        "solver.x0 = 3 1",
    ),
    problem!(
        "lse_simplex",
        "objective.kind = log_sum_exp",
        "objective.n = 3",
        "set.kind = halfspace_simplex",
        "solver.x0 = 1 0 0",
    ),
    problem!(
        "lse_product",
        "objective.kind = log_sum_exp",
        "objective.n = 2",
        "set.kind = product_set",
        "solver.x0 = 2 0.5",
    ),
    problem!(
        "lse_polyhedron",
        "objective.kind = log_sum_exp",
        "objective.n = 2",
        "set.kind = polyhedron",
        "set.A = 1 1 1 2",
        "set.b = 1 2",
        "solver.x0 = 2 1",
    ),
    problem!(
        "lse_orthant",
        "objective.kind = log_sum_exp",
        "objective.n = 3",
        "set.kind = orthant",
        "solver.x0 = 1 2 3",
    ),
];

pub fn suite(name: &str) -> Result<&'static [BenchProblem], BenchError> {
    match name {
        "paper" => Ok(SHIPPED),
        other => Err(BenchError::UnknownSuite(other.to_owned())),
    }
}

/// Everything the suite computes for one problem.
#[derive(Debug)]
pub struct BenchOutcome {
    pub problem: &'static str,
    pub trace: SolveTrace<f64>,
    pub reference: ReferenceSolution<f64>,
    pub summary: SummaryRow,
    /// `None` when the objective is not strongly convex or the reference
    /// point is not certified stationary.
    pub distance_ok: Option<bool>,
    pub condition_a: bool,
    pub condition_b: bool,
}

impl BenchOutcome {
    pub fn passed(&self) -> bool {
        self.summary.rate_ok
            && self.summary.decrease_ok
            && self.distance_ok.unwrap_or(true)
            && self.condition_a
            && self.condition_b
    }
}

/// Solves and certifies one problem without touching the filesystem.
pub fn run_problem(problem: &BenchProblem, seed: u64) -> Result<BenchOutcome, BenchError> {
    let name = problem.name;
    let p = Problem::parse(problem.config, Validation::Strict).map_err(|source| {
        BenchError::Config {
            problem: name,
            source,
        }
    })?;
    let cert_err = |source| BenchError::Certify {
        problem: name,
        source,
    };
    let trace = solver::solve(&p.objective, &p.set, &p.x0, &p.solver).map_err(|source| {
        BenchError::Solver {
            problem: name,
            source,
        }
    })?;
    if let Termination::OracleUnbounded { .. } = trace.termination {
        return Err(cert_err(CertifyError::OracleUnbounded));
    }
    let reference = certify::reference_solution(&p.objective, &p.set, ReferenceMethod::Analytic)
        .or_else(|_| certify::reference_solution(&p.objective, &p.set, ReferenceMethod::LongRunFw))
        .map_err(cert_err)?;
    let min_f = trace
        .min_value()
        .expect("solve returns at least one record");
    let f_ref = reference.f_star.min(min_f);

    let lipschitz = p
        .solver
        .lipschitz_override
        .unwrap_or(p.objective.lipschitz());
    let decrease_ok = solver::check_sufficient_decrease(&trace);
    let cert = match certify::rate_constants(&trace, lipschitz) {
        Ok(c) => Some(certify::verify_rate(&trace, f_ref, &c).map_err(cert_err)?),
        Err(CertifyError::NoMovingStep) => None,
        Err(e) => return Err(cert_err(e)),
    };
    let modulus = p.objective.strong_convexity();
    let distance_ok = match &reference.x_star {
        Some(x_star) if modulus > 0.0 && is_stationary(&p, x_star) => Some(
            certify::verify_strong_distance(&trace, x_star, modulus, f_ref, cert.as_ref())
                .map_err(cert_err)?,
        ),
        _ => None,
    };
    let condition_a = certify::check_condition_a(
        &p.objective,
        &p.set,
        CONDITION_SAMPLES,
        seed,
        p.solver.lipschitz_override,
    )
    .map_err(cert_err)?
    .passed;
    let condition_b = certify::check_condition_b(&p.objective, &p.set, CONDITION_SAMPLES, seed)
        .map_err(cert_err)?
        .passed;

    let last = trace.last().expect("solve returns at least one record");
    let summary = SummaryRow {
        problem: name.to_owned(),
        f_star: f_ref,
        final_f: last.f_value,
        final_gap: last.gap,
        iters: trace.records.len(),
        sigma: cert.as_ref().map_or(0.0, |c| c.sigma),
        gamma: cert.as_ref().map_or(0.0, |c| c.gamma),
        big_gamma: cert.as_ref().map_or(f64::INFINITY, |c| c.big_gamma),
        rate_ok: cert.as_ref().is_none_or(|c| c.rate_ok()),
        decrease_ok,
    };
    Ok(BenchOutcome {
        problem: name,
        trace,
        reference,
        summary,
        distance_ok,
        condition_a,
        condition_b,
    })
}

/// Under strong convexity a stationary point is the unique minimizer.
fn is_stationary(p: &Problem, x: &[f64]) -> bool {
    let tol = STATIONARY_TOL * p.objective.value(x).abs().max(1.0);
    certify::stationarity_residual(&p.objective, &p.set, x).is_ok_and(|r| r <= tol)
}

/// Runs a suite concurrently, writing `<problem>.csv` per problem and then
/// `summary.csv` into `out_dir`.
pub fn run_suite(name: &str, out_dir: &Path, seed: u64) -> Result<Vec<BenchOutcome>, BenchError> {
    let problems = suite(name)?;
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| BenchError::Io { path, source }
    };
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let outcomes: Vec<Result<BenchOutcome, BenchError>> = std::thread::scope(|s| {
        let handles: Vec<_> = problems
            .iter()
            .map(|problem| {
                s.spawn(move || {
                    let outcome = run_problem(problem, seed)?;
                    let path = out_dir.join(format!("{}.csv", problem.name));
                    report::write_trace_csv(&path, &outcome.trace).map_err(io_err(&path))?;
                    Ok(outcome)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("benchmark thread panicked"))
            .collect()
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<SummaryRow> = outcomes.iter().map(|o| o.summary.clone()).collect();
    let path = out_dir.join("summary.csv");
    std::fs::write(&path, report::summary_csv(&rows)).map_err(io_err(&path))?;
    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_problem_parses_strictly() {
        for p in SHIPPED {
            Problem::parse(p.config, Validation::Strict)
                .unwrap_or_else(|e| panic!("{}: {e}", p.name));
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = SHIPPED.iter().map(|p| p.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), SHIPPED.len());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(suite("nope"), Err(BenchError::UnknownSuite(_))));
    }

    #[test]
    fn demo_problem_certifies() {
        let out = run_problem(&SHIPPED[0], 0).unwrap();
        assert_eq!(out.trace.records.len(), 2);
        assert_eq!(out.reference.method, ReferenceMethod::Analytic);
        assert_eq!(out.summary.f_star, 1.5);
        assert_eq!(out.distance_ok, Some(true));
        assert!(out.passed());
    }
}
