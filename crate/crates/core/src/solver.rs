//! The Frank-Wolfe iteration.
//!
//! At `x^k` the oracle minimizes the linearization `∇f(x^k)ᵀ(p − x^k)` over
//! the feasible set, yielding `p^k` and the gap `v_k ≤ 0`. The step size
//! minimizes the quadratic upper model along `p^k − x^k`:
//!
//! ```text
//! λ_k = min{1, |v_k| / (L ‖p^k − x^k‖²)},   x^{k+1} = x^k + λ_k (p^k − x^k)
//! ```
//!
//! and guarantees `f(x^{k+1}) ≤ f(x^k) − ½ |v_k| λ_k`.

use thiserror::Error;

use crate::linalg::{self, dot};
use crate::objectives::Objective;
use crate::oracles::{self, FeasibleSet, OracleError, OracleOutcome, Unboundedness};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("starting point is not feasible")]
    InfeasibleStart,
    #[error("step size needs a negative gap (got {gap})")]
    NonNegativeGap { gap: f64 },
    #[error("step size needs p != x")]
    ZeroDistance,
    #[error("Lipschitz constant must be nonnegative and finite (got {0})")]
    InvalidLipschitz(f64),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("linear subproblem has no minimizer ({reason:?})")]
    OracleUnbounded {
        direction: Vec<f64>,
        reason: Unboundedness,
    },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    /// Stop once `|gap| ≤ gap_tolerance`.
    pub gap_tolerance: T,
    /// Maximum number of oracle calls (records in the trace).
    pub max_iterations: usize,
    /// Replaces the objective's declared `L` in the step-size rule.
    pub lipschitz_override: Option<T>,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            gap_tolerance: T::of(T::GAP_TOL),
            max_iterations: 10_000,
            lipschitz_override: None,
        }
    }
}

impl<T: Scalar> SolverConfig<T> {
    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.gap_tolerance >= T::zero()) {
            return Err(SolverError::InvalidConfig("gap_tolerance must be >= 0"));
        }
        if self.max_iterations == 0 {
            return Err(SolverError::InvalidConfig("max_iterations must be >= 1"));
        }
        if let Some(l) = self.lipschitz_override {
            if !(l > T::zero()) || !l.is_finite() {
                return Err(SolverError::InvalidConfig(
                    "lipschitz_override must be positive",
                ));
            }
        }
        Ok(())
    }
}

/// One oracle call of the method.
#[derive(Debug, Clone, PartialEq)]
pub struct IterateRecord<T> {
    pub k: usize,
    pub x: Vec<T>,
    pub p: Vec<T>,
    /// `∇f(x)ᵀ(p − x)`, never positive.
    pub gap: T,
    /// Step applied to reach the next record; `0` on the final record.
    pub lambda: T,
    pub f_value: T,
    pub grad_norm: T,
    pub dist_px: T,
}

impl<T: Scalar> IterateRecord<T> {
    /// `x + λ (p − x)` with this record's step.
    pub fn next_point(&self) -> Vec<T> {
        linalg::lerp(&self.x, &self.p, self.lambda)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination<T> {
    GapBelowTolerance,
    /// Iteration budget exhausted, or the step underflowed so the iterate
    /// stopped moving (`stalled`).
    MaxIterations {
        stalled: bool,
    },
    /// The oracle found no minimizer at iteration `k`.
    OracleUnbounded {
        k: usize,
        direction: Vec<T>,
        reason: Unboundedness,
    },
}

impl<T> Termination<T> {
    pub fn label(&self) -> &'static str {
        match self {
            Self::GapBelowTolerance => "GapBelowTolerance",
            Self::MaxIterations { stalled: false } => "MaxIterations",
            Self::MaxIterations { stalled: true } => "MaxIterations (stalled)",
            Self::OracleUnbounded { .. } => "OracleUnbounded",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveTrace<T> {
    pub records: Vec<IterateRecord<T>>,
    pub termination: Termination<T>,
}

impl<T: Scalar> SolveTrace<T> {
    pub fn last(&self) -> Option<&IterateRecord<T>> {
        self.records.last()
    }

    pub fn final_value(&self) -> Option<T> {
        self.last().map(|r| r.f_value)
    }

    pub fn min_value(&self) -> Option<T> {
        self.records
            .iter()
            .map(|r| r.f_value)
            .reduce(|a, b| a.min(b))
    }
}

/// `∇f(x)ᵀ(p − x)`
pub fn dual_gap<T: Scalar>(grad: &[T], x: &[T], p: &[T]) -> Result<T, SolverError> {
    for v in [x, p] {
        if v.len() != grad.len() {
            return Err(SolverError::Dimension {
                expected: grad.len(),
                actual: v.len(),
            });
        }
    }
    Ok(grad
        .iter()
        .zip(x.iter().zip(p))
        .fold(T::zero(), |acc, (&g, (&xi, &pi))| acc + g * (pi - xi)))
}

/// `min{1, |gap| / (L · dist_sq)}`
///
/// `L = 0` (an affine objective) yields the full step.
pub fn step_size<T: Scalar>(gap: T, lipschitz: T, dist_sq: T) -> Result<T, SolverError> {
    if !(gap < T::zero()) {
        return Err(SolverError::NonNegativeGap {
            gap: gap.to_f64_lossy(),
        });
    }
    if !(dist_sq > T::zero()) {
        return Err(SolverError::ZeroDistance);
    }
    if !(lipschitz >= T::zero()) || !lipschitz.is_finite() {
        return Err(SolverError::InvalidLipschitz(lipschitz.to_f64_lossy()));
    }
    Ok(T::one().min(gap.abs() / (lipschitz * dist_sq)))
}

/// One oracle call at `x`. The returned record carries the step `λ` the
/// method would take; the gap is clamped at zero from above, since a positive
/// value can only be rounding when `x` is feasible.
pub fn fw_step<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
    x: &[T],
    k: usize,
    lipschitz: T,
) -> Result<IterateRecord<T>, SolverError> {
    step_or_certificate(objective, set, x, k, lipschitz)?.map_err(|(direction, reason)| {
        SolverError::OracleUnbounded {
            direction: direction.iter().map(|v| v.to_f64_lossy()).collect(),
            reason,
        }
    })
}

type Certificate<T> = (Vec<T>, Unboundedness);

fn step_or_certificate<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
    x: &[T],
    k: usize,
    lipschitz: T,
) -> Result<Result<IterateRecord<T>, Certificate<T>>, SolverError> {
    let grad = objective.gradient(x);
    let p = match oracles::lo_oracle(set, &grad, x)? {
        OracleOutcome::Attained { point, .. } => point,
        OracleOutcome::Unbounded { direction, reason } => return Ok(Err((direction, reason))),
    };
    let gap = dual_gap(&grad, x, &p)?.min(T::zero());
    let dist_sq = linalg::dist_sq(&p, x);
    let lambda = if gap < T::zero() && dist_sq > T::zero() {
        step_size(gap, lipschitz, dist_sq)?
    } else {
        T::zero()
    };
    Ok(Ok(IterateRecord {
        k,
        x: x.to_vec(),
        p,
        gap,
        lambda,
        f_value: objective.value(x),
        grad_norm: dot(&grad, &grad).sqrt(),
        dist_px: dist_sq.sqrt(),
    }))
}

/// Runs the method from `x0` until the gap tolerance, the iteration budget,
/// or an unbounded subproblem. The last record carries the step the method
/// would take next, but it is not applied.
pub fn solve<T: Scalar, O: Objective<T> + ?Sized>(
    objective: &O,
    set: &FeasibleSet<T>,
    x0: &[T],
    config: &SolverConfig<T>,
) -> Result<SolveTrace<T>, SolverError> {
    config.validate()?;
    let n = set.dim();
    for actual in [objective.dim(), x0.len()] {
        if actual != n {
            return Err(SolverError::Dimension {
                expected: n,
                actual,
            });
        }
    }
    if !set.contains(x0) {
        return Err(SolverError::InfeasibleStart);
    }
    let lipschitz = config
        .lipschitz_override
        .unwrap_or_else(|| objective.lipschitz());

    let mut records = Vec::new();
    let mut x = x0.to_vec();
    for k in 0..config.max_iterations {
        let record = match step_or_certificate(objective, set, &x, k, lipschitz)? {
            Ok(r) => r,
            Err((direction, reason)) => {
                return Ok(SolveTrace {
                    records,
                    termination: Termination::OracleUnbounded {
                        k,
                        direction,
                        reason,
                    },
                });
            }
        };
        if record.gap.abs() <= config.gap_tolerance {
            records.push(record);
            return Ok(SolveTrace {
                records,
                termination: Termination::GapBelowTolerance,
            });
        }
        let next = record.next_point();
        let stalled = next == x;
        if stalled || k + 1 == config.max_iterations {
            records.push(record);
            return Ok(SolveTrace {
                records,
                termination: Termination::MaxIterations { stalled },
            });
        }
        records.push(record);
        x = next;
    }
    unreachable!("loop returns on its final iteration")
}

/// `f(x^{k+1}) ≤ f(x^k) − ½ |v_k| λ_k` for every consecutive pair, with
/// absolute slack `1e-12`.
pub fn check_sufficient_decrease<T: Scalar>(trace: &SolveTrace<T>) -> bool {
    sufficient_decrease_violations(trace, T::of(1e-12)).is_empty()
}

/// Indices `k` where the decrease inequality between `k` and `k + 1` fails.
pub fn sufficient_decrease_violations<T: Scalar>(trace: &SolveTrace<T>, slack: T) -> Vec<usize> {
    let half = T::of(0.5);
    trace
        .records
        .windows(2)
        .filter(|w| {
            let (cur, next) = (&w[0], &w[1]);
            next.f_value > cur.f_value - half * cur.gap.abs() * cur.lambda + slack
        })
        .map(|w| w[0].k)
        .collect()
}
