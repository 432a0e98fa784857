//! Runtime certificates for the Frank-Wolfe convergence theory.
//!
//! Two gradient assumptions make the method well defined and convergent on an
//! unbounded set `C`:
//!
//! * **(A)** `‖∇f(x) − ∇f(y)‖ ≤ L ‖x − y‖` on `C`;
//! * **(B)** `∇f(x)` lies in the interior of the dual of the recession cone of
//!   `C`, i.e. `∇f(x)ᵀd > 0` for every recession generator `d`.
//!
//! Both are checked by seeded sampling. Given a finished trace, the rate
//! constants
//!
//! ```text
//! σ = max ‖p^k − x^k‖,  γ = max ‖∇f(x^k)‖,  Γ = min{1/(2γσ), 1/(2Lσ²)}
//! ```
//!
//! certify `Γ a_k² ≤ a_k − a_{k+1}` for `a_k = f(x^k) − f*`, which in turn
//! gives `a_k ≤ a_0 / (1 + Γ a_0 k) < 1/(Γ k)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{self, dot};
use crate::objectives::Objective;
use crate::oracles::{self, FeasibleSet, OracleError, OracleOutcome};
use crate::solver::{self, SolveTrace, SolverConfig, SolverError};
use crate::Scalar;

/// Side of the sampling box `[0, side]ⁿ` intersected with the feasible set.
pub const TEST_REGION_SIDE: f64 = 10.0;
/// Multiplicative slack on the declared Lipschitz constant.
pub const LIPSCHITZ_SLACK: f64 = 1e-8;
/// Minimum `∇f(x)ᵀd` over unit generators counted as dual-interior.
pub const DUAL_MARGIN: f64 = 1e-10;
pub const RECURRENCE_SLACK: f64 = 1e-12;
pub const BOUND_SLACK: f64 = 1e-10;
pub const DISTANCE_SLACK: f64 = 1e-8;
/// Allowed excess of a reference value over the best trace value.
pub const REFERENCE_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("trace has no step with a negative gap")]
    NoMovingStep,
    #[error("reference value {f_star} exceeds the best trace value {min_f}")]
    InconsistentReference { f_star: f64, min_f: f64 },
    #[error("strong convexity modulus must be positive")]
    NonPositiveModulus,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("rate constants are required for traces with more than one record")]
    MissingCertificate,
    #[error("grid reference is limited to n <= 3 (got n = {0})")]
    GridDimension(usize),
    #[error("no analytic solution is known for this problem")]
    NoAnalyticSolution,
    #[error("linear subproblem is unbounded at the given point")]
    OracleUnbounded,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzReport<T> {
    pub declared: T,
    pub max_ratio: T,
    pub pairs: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualMarginReport<T> {
    pub min_margin: T,
    /// Sampled point and generator index attaining `min_margin`.
    pub worst_point: Vec<T>,
    pub worst_generator: usize,
    pub samples: usize,
    pub passed: bool,
}

/// Samples pairs in the test region and compares the largest gradient
/// difference quotient with the declared `L` (or `declared` when given).
pub fn check_condition_a<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
    samples: usize,
    seed: u64,
    declared: Option<T>,
) -> Result<LipschitzReport<T>, CertifyError> {
    if samples < 2 {
        return Err(CertifyError::TooFewSamples {
            needed: 2,
            got: samples,
        });
    }
    let declared = declared.unwrap_or_else(|| objective.lipschitz());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = T::of(TEST_REGION_SIDE);
    let mut max_ratio = T::zero();
    let mut pairs = 0;
    while pairs < samples {
        let x = set.sample_point(&mut rng, side);
        let y = set.sample_point(&mut rng, side);
        let dx = linalg::norm(&linalg::sub(&x, &y));
        if dx == T::zero() {
            continue;
        }
        let dg = linalg::norm(&linalg::sub(
            &objective.gradient(&x),
            &objective.gradient(&y),
        ));
        max_ratio = max_ratio.max(dg / dx);
        pairs += 1;
    }
    Ok(LipschitzReport {
        declared,
        max_ratio,
        pairs,
        passed: max_ratio <= declared * (T::one() + T::of(LIPSCHITZ_SLACK)),
    })
}

/// Checks `∇f(x)ᵀd ≥ margin` for every unit recession generator `d` at
/// sampled feasible points.
pub fn check_condition_b<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
    samples: usize,
    seed: u64,
) -> Result<DualMarginReport<T>, CertifyError> {
    check_condition_b_with(objective, set, samples, seed, T::of(DUAL_MARGIN))
}

pub fn check_condition_b_with<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
    samples: usize,
    seed: u64,
    margin: T,
) -> Result<DualMarginReport<T>, CertifyError> {
    if samples < 1 {
        return Err(CertifyError::TooFewSamples {
            needed: 1,
            got: samples,
        });
    }
    // Margins are taken on unit vectors so rescaled generators report the same.
    let generators: Vec<Vec<T>> = set
        .recession_generators()
        .iter()
        .filter_map(|g| linalg::normalized(g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = T::of(TEST_REGION_SIDE);
    let mut points = vec![set.anchor()];
    points.extend((1..samples).map(|_| set.sample_point(&mut rng, side)));

    let mut report = DualMarginReport {
        min_margin: T::infinity(),
        worst_point: Vec::new(),
        worst_generator: 0,
        samples: points.len(),
        passed: true,
    };
    for x in points {
        let grad = objective.gradient(&x);
        for (i, d) in generators.iter().enumerate() {
            let m = dot(&grad, d);
            if m < report.min_margin || report.worst_point.is_empty() {
                report.min_margin = m;
                report.worst_point = x.clone();
                report.worst_generator = i;
            }
        }
    }
    report.passed = report.min_margin >= margin;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateCertificate<T> {
    pub sigma: T,
    pub gamma: T,
    pub big_gamma: T,
    pub recurrence_ok: bool,
    pub bound_ok: bool,
}

impl<T> RateCertificate<T> {
    pub fn rate_ok(&self) -> bool {
        self.recurrence_ok && self.bound_ok
    }
}

/// `σ`, `γ` as maxima over the trace and `Γ = min{1/(2γσ), 1/(2Lσ²)}`.
pub fn rate_constants<T: Scalar>(
    trace: &SolveTrace<T>,
    lipschitz: T,
) -> Result<RateCertificate<T>, CertifyError> {
    if !trace.records.iter().any(|r| r.gap < T::zero()) {
        return Err(CertifyError::NoMovingStep);
    }
    let sigma = trace
        .records
        .iter()
        .fold(T::zero(), |m, r| m.max(r.dist_px));
    let gamma = trace
        .records
        .iter()
        .fold(T::zero(), |m, r| m.max(r.grad_norm));
    let two = T::of(2.0);
    let big_gamma =
        (T::one() / (two * gamma * sigma)).min(T::one() / (two * lipschitz * sigma * sigma));
    Ok(RateCertificate {
        sigma,
        gamma,
        big_gamma,
        recurrence_ok: false,
        bound_ok: false,
    })
}

/// Fills the recurrence and bound flags of `cert` against `f_star`.
pub fn verify_rate<T: Scalar>(
    trace: &SolveTrace<T>,
    f_star: T,
    cert: &RateCertificate<T>,
) -> Result<RateCertificate<T>, CertifyError> {
    let min_f = trace.min_value().ok_or(CertifyError::NoMovingStep)?;
    if f_star > min_f + T::of(REFERENCE_SLACK) {
        return Err(CertifyError::InconsistentReference {
            f_star: f_star.to_f64_lossy(),
            min_f: min_f.to_f64_lossy(),
        });
    }
    let g = cert.big_gamma;
    let a: Vec<T> = trace.records.iter().map(|r| r.f_value - f_star).collect();
    let recurrence_ok = a
        .windows(2)
        .all(|w| g * w[0] * w[0] <= w[0] - w[1] + T::of(RECURRENCE_SLACK));
    let a0 = a[0];
    let slack = T::of(BOUND_SLACK);
    let bound_ok = a.iter().enumerate().skip(1).all(|(k, &ak)| {
        let k = T::of(k as f64);
        ak <= a0 / (T::one() + g * a0 * k) + slack && ak <= T::one() / (g * k) + slack
    });
    Ok(RateCertificate {
        recurrence_ok,
        bound_ok,
        ..cert.clone()
    })
}

/// Distance bounds under `M`-strong convexity:
///
/// ```text
/// ‖x^k − x*‖ ≤ √(2 (f(x^k) − f*) / M)         for all k
/// ‖x^k − x*‖ ≤ √(2 / (Γ M)) / √k              for k ≥ 1
/// ```
///
/// `cert` supplies `Γ` and may be omitted only for single-record traces.
pub fn verify_strong_distance<T: Scalar>(
    trace: &SolveTrace<T>,
    x_star: &[T],
    modulus: T,
    f_star: T,
    cert: Option<&RateCertificate<T>>,
) -> Result<bool, CertifyError> {
    if !(modulus > T::zero()) {
        return Err(CertifyError::NonPositiveModulus);
    }
    if trace.records.len() > 1 && cert.is_none() {
        return Err(CertifyError::MissingCertificate);
    }
    let slack = T::of(DISTANCE_SLACK);
    let two = T::of(2.0);
    for r in &trace.records {
        if r.x.len() != x_star.len() {
            return Err(CertifyError::Dimension {
                expected: x_star.len(),
                actual: r.x.len(),
            });
        }
        let dist = linalg::dist_sq(&r.x, x_star).sqrt();
        let excess = (r.f_value - f_star).max(T::zero());
        if dist > (two * excess / modulus).sqrt() + slack {
            return Ok(false);
        }
        if r.k >= 1 {
            let g = cert.expect("checked above").big_gamma;
            let bound = (two / (g * modulus)).sqrt() / T::of(r.k as f64).sqrt();
            if dist > bound + slack {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceMethod {
    Analytic,
    LongRunFw,
    Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution<T> {
    pub f_star: T,
    pub x_star: Option<Vec<T>>,
    pub method: ReferenceMethod,
}

/// Reference optimum for a convex problem.
///
/// * `Analytic`: the cone apex when it is stationary, otherwise the
///   symmetric candidate (`e/n` on the halfspace simplex, `e` on the product
///   set) when the oracle certifies it stationary. Convexity makes either a
///   global minimizer.
/// * `LongRunFw`: the method itself with gap tolerance `1e-12` and `10⁶`
///   oracle calls, started from the set's anchor point.
/// * `Grid`: coarse-to-fine grid search down to spacing `1e-3` (`n ≤ 3`).
pub fn reference_solution<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
    method: ReferenceMethod,
) -> Result<ReferenceSolution<T>, CertifyError> {
    match method {
        ReferenceMethod::Analytic => analytic_reference(objective, set),
        ReferenceMethod::LongRunFw => {
            let config = SolverConfig {
                gap_tolerance: T::of(1e-12),
                max_iterations: 1_000_000,
                lipschitz_override: None,
            };
            let trace = solver::solve(objective, set, &set.anchor(), &config)?;
            let best = trace
                .records
                .iter()
                .min_by(|a, b| a.f_value.partial_cmp(&b.f_value).expect("finite values"))
                .ok_or(CertifyError::OracleUnbounded)?;
            Ok(ReferenceSolution {
                f_star: best.f_value,
                x_star: Some(best.x.clone()),
                method,
            })
        }
        ReferenceMethod::Grid => grid_reference(objective, set),
    }
}

fn analytic_reference<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
) -> Result<ReferenceSolution<T>, CertifyError> {
    let n = set.dim();
    let candidate = match set {
        FeasibleSet::MonotoneNonnegCone { .. } | FeasibleSet::NonnegOrthant { .. } => {
            vec![T::zero(); n]
        }
        FeasibleSet::HalfspaceSimplex { .. } => vec![T::one() / T::of(n as f64); n],
        FeasibleSet::ProductSet { .. } => vec![T::one(); n],
        FeasibleSet::Polyhedron(_) => return Err(CertifyError::NoAnalyticSolution),
    };
    let tol = T::of(1e-12) * T::one().max(objective.value(&candidate).abs());
    match stationarity_residual(objective, set, &candidate) {
        Ok(r) if r <= tol && objective.is_convex() => Ok(ReferenceSolution {
            f_star: objective.value(&candidate),
            x_star: Some(candidate),
            method: ReferenceMethod::Analytic,
        }),
        _ => Err(CertifyError::NoAnalyticSolution),
    }
}

fn grid_reference<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
) -> Result<ReferenceSolution<T>, CertifyError> {
    let n = set.dim();
    if n > 3 {
        return Err(CertifyError::GridDimension(n));
    }
    let anchor = set.anchor();
    let radius = anchor.iter().fold(T::one(), |m, &v| m.max(v.abs())) * T::of(2.0);
    let mut lo = vec![T::zero(); n];
    let mut hi = vec![radius; n];
    let per_axis = 41usize;
    let mut best: Option<(T, Vec<T>)> = None;
    loop {
        let step: Vec<T> = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| (h - l) / T::of((per_axis - 1) as f64))
            .collect();
        let mut idx = vec![0usize; n];
        loop {
            let x: Vec<T> = (0..n)
                .map(|i| lo[i] + step[i] * T::of(idx[i] as f64))
                .collect();
            if set.contains_with(&x, T::zero()) {
                let f = objective.value(&x);
                if best.as_ref().is_none_or(|(bf, _)| f < *bf) {
                    best = Some((f, x));
                }
            }
            let mut axis = 0;
            while axis < n {
                idx[axis] += 1;
                if idx[axis] < per_axis {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
            if axis == n {
                break;
            }
        }
        let max_step = step.iter().fold(T::zero(), |m, &s| m.max(s));
        let Some((_, center)) = best.as_ref() else {
            return Err(CertifyError::NoAnalyticSolution);
        };
        if max_step <= T::of(1e-3) {
            break;
        }
        for i in 0..n {
            let w = step[i] * T::of(4.0);
            lo[i] = (center[i] - w).max(T::zero());
            hi[i] = center[i] + w;
        }
    }
    let (f_star, x_star) = best.expect("grid search found a feasible point");
    Ok(ReferenceSolution {
        f_star,
        x_star: Some(x_star),
        method: ReferenceMethod::Grid,
    })
}

/// `|min_{p∈C} ∇f(x)ᵀ(p − x)|`, zero exactly at stationary points.
pub fn stationarity_residual<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
    x: &[T],
) -> Result<T, CertifyError> {
    let grad = objective.gradient(x);
    match oracles::lo_oracle(set, &grad, x)? {
        OracleOutcome::Attained { point, .. } => {
            Ok(solver::dual_gap(&grad, x, &point)?.min(T::zero()).abs())
        }
        OracleOutcome::Unbounded { .. } => Err(CertifyError::OracleUnbounded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::objectives::{LogSumExp, Quadratic, SqrtQuadratic};
    use crate::solver::{IterateRecord, Termination};
    use approx::assert_abs_diff_eq;

    fn demo() -> (Quadratic<f64>, FeasibleSet<f64>) {
        (
            Quadratic::new(vec![1.0, 1.0], Matrix::identity(2)).unwrap(),
            FeasibleSet::halfspace_simplex(2).unwrap(),
        )
    }

    fn demo_trace() -> SolveTrace<f64> {
        let (f, set) = demo();
        solver::solve(&f, &set, &[1.0, 0.0], &SolverConfig::default()).unwrap()
    }

    fn synthetic(dists: &[f64], grads: &[f64], fs: &[f64]) -> SolveTrace<f64> {
        let records = dists
            .iter()
            .zip(grads)
            .zip(fs)
            .enumerate()
            .map(|(k, ((&d, &g), &f))| IterateRecord {
                k,
                x: vec![0.0],
                p: vec![d],
                gap: -1.0,
                lambda: 0.5,
                f_value: f,
                grad_norm: g,
                dist_px: d,
            })
            .collect();
        SolveTrace {
            records,
            termination: Termination::MaxIterations { stalled: false },
        }
    }

    #[test]
    fn condition_a_examples() {
        let set = FeasibleSet::halfspace_simplex(3).unwrap();
        let f = SqrtQuadratic::new(vec![1.0, 2.0, 3.0], 1.0).unwrap();
        let r = check_condition_a(&f, &set, 1000, 7, None).unwrap();
        assert!(r.passed);
        assert!(r.max_ratio <= 1.0);

        let (q, set2) = demo();
        let r = check_condition_a(&q, &set2, 200, 7, Some(1.0)).unwrap();
        assert!(!r.passed);

        let lin = Quadratic::linear(vec![1.0, 2.0]).unwrap();
        let r = check_condition_a(&lin, &set2, 50, 7, None).unwrap();
        assert_eq!(r.max_ratio, 0.0);
        assert!(r.passed);

        assert!(matches!(
            check_condition_a(&lin, &set2, 1, 7, None),
            Err(CertifyError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn condition_b_examples() {
        let (q, set) = demo();
        let r = check_condition_b(&q, &set, 200, 3).unwrap();
        assert!(r.passed);
        assert!(r.min_margin >= 1.0);

        let bad = Quadratic::linear(vec![1.0, -1.0]).unwrap();
        let r = check_condition_b(&bad, &FeasibleSet::orthant(2).unwrap(), 10, 3).unwrap();
        assert!(!r.passed);
        assert_eq!(r.worst_generator, 1);

        let lse = LogSumExp::new(3).unwrap();
        let r = check_condition_b(
            &lse,
            &FeasibleSet::<f64>::halfspace_simplex(3).unwrap(),
            200,
            3,
        )
        .unwrap();
        assert!(r.passed);
    }

    #[test]
    fn rate_constants_examples() {
        let t = synthetic(&[1.0, 2.0], &[3.0, 1.0], &[1.0, 0.5]);
        let c = rate_constants(&t, 2.0).unwrap();
        assert_eq!((c.sigma, c.gamma), (2.0, 3.0));
        assert_eq!(c.big_gamma, 1.0 / 16.0);

        let t = synthetic(&[1.0], &[1.0], &[1.0]);
        assert_eq!(rate_constants(&t, 0.5).unwrap().big_gamma, 0.5);

        let c = rate_constants(&demo_trace(), 2.0).unwrap();
        assert_abs_diff_eq!(c.sigma, 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.gamma, 10f64.sqrt(), epsilon = 1e-15);
        let expected = (1.0 / (2.0 * 20f64.sqrt())).min(1.0 / 8.0);
        assert_abs_diff_eq!(c.big_gamma, expected, epsilon = 1e-15);
    }

    #[test]
    fn rate_constants_need_a_moving_step() {
        let (f, set) = demo();
        let t = solver::solve(&f, &set, &[0.5, 0.5], &SolverConfig::default()).unwrap();
        assert_eq!(rate_constants(&t, 2.0), Err(CertifyError::NoMovingStep));
    }

    #[test]
    fn verify_rate_examples() {
        // a_{k+1} = a_k − Γ a_k² meets the recurrence with equality.
        let g = 0.25;
        let fs: Vec<f64> = std::iter::successors(Some(2.0f64), |a| Some(a - g * a * a))
            .take(20)
            .collect();
        let t = synthetic(&[1.0; 20], &[1.0; 20], &fs);
        let cert = RateCertificate {
            sigma: 1.0,
            gamma: 1.0,
            big_gamma: g,
            recurrence_ok: false,
            bound_ok: false,
        };
        let out = verify_rate(&t, 0.0, &cert).unwrap();
        assert!(out.recurrence_ok && out.bound_ok);

        let t = synthetic(&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]);
        let cert = RateCertificate {
            big_gamma: 1.0,
            ..cert
        };
        let out = verify_rate(&t, 0.0, &cert).unwrap();
        assert!(!out.recurrence_ok);

        let trace = demo_trace();
        let cert = rate_constants(&trace, 2.0).unwrap();
        let out = verify_rate(&trace, 1.5, &cert).unwrap();
        assert!(out.rate_ok());

        assert!(matches!(
            verify_rate(&trace, 1.6, &cert),
            Err(CertifyError::InconsistentReference { .. })
        ));
    }

    #[test]
    fn strong_distance_examples() {
        let trace = demo_trace();
        let cert = rate_constants(&trace, 2.0).unwrap();
        assert!(verify_strong_distance(&trace, &[0.5, 0.5], 2.0, 1.5, Some(&cert)).unwrap());
        assert!(!verify_strong_distance(&trace, &[0.0, 0.0], 2.0, 1.5, Some(&cert)).unwrap());
        assert_eq!(
            verify_strong_distance(&trace, &[0.5, 0.5], 0.0, 1.5, Some(&cert)),
            Err(CertifyError::NonPositiveModulus)
        );

        let (f, set) = demo();
        let at_opt = solver::solve(&f, &set, &[0.5, 0.5], &SolverConfig::default()).unwrap();
        assert!(verify_strong_distance(&at_opt, &[0.5, 0.5], 2.0, 1.5, None).unwrap());
    }

    #[test]
    fn reference_solutions() {
        let (f, set) = demo();
        let r = reference_solution(&f, &set, ReferenceMethod::Analytic).unwrap();
        assert_eq!(r.f_star, 1.5);
        assert_eq!(r.x_star, Some(vec![0.5, 0.5]));
        let g = reference_solution(&f, &set, ReferenceMethod::Grid).unwrap();
        assert_abs_diff_eq!(g.f_star, 1.5, epsilon = 1e-6);

        let lin = Quadratic::linear(vec![3.0, 2.0, 5.0]).unwrap();
        let s3 = FeasibleSet::halfspace_simplex(3).unwrap();
        let r = reference_solution(&lin, &s3, ReferenceMethod::LongRunFw).unwrap();
        assert_eq!(r.f_star, 2.0);
        assert!(matches!(
            reference_solution(&lin, &s3, ReferenceMethod::Analytic),
            Err(CertifyError::NoAnalyticSolution)
        ));

        let sq = SqrtQuadratic::new(vec![1.0, 2.0], 1.0).unwrap();
        let cone = FeasibleSet::monotone_cone(2).unwrap();
        let r = reference_solution(&sq, &cone, ReferenceMethod::Analytic).unwrap();
        assert_eq!(r.x_star, Some(vec![0.0, 0.0]));
        assert_eq!(r.f_star, 1.0);

        let s4 = FeasibleSet::<f64>::orthant(4).unwrap();
        let lse = LogSumExp::new(4).unwrap();
        assert_eq!(
            reference_solution(&lse, &s4, ReferenceMethod::Grid),
            Err(CertifyError::GridDimension(4))
        );
    }

    #[test]
    fn stationarity_residual_examples() {
        let (f, set) = demo();
        assert_eq!(stationarity_residual(&f, &set, &[0.5, 0.5]).unwrap(), 0.0);
        assert_eq!(stationarity_residual(&f, &set, &[1.0, 0.0]).unwrap(), 2.0);
        // ∇f = 0 at the unconstrained minimizer of a shifted quadratic on the orthant.
        let q = Quadratic::new_unchecked(vec![-2.0, -2.0], Matrix::identity(2)).unwrap();
        let orth = FeasibleSet::orthant(2).unwrap();
        assert_eq!(stationarity_residual(&q, &orth, &[1.0, 1.0]).unwrap(), 0.0);
    }
}
