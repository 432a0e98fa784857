//! Frank-Wolfe (conditional gradient) optimization over closed convex sets that
//! need not be bounded.
//!
//! The solver only touches the feasible set through a linear minimization
//! oracle. When the feasible set is unbounded, the oracle is well posed only if
//! the gradient lies in the interior of the dual of the set's recession cone;
//! every oracle here either returns an attained minimizer or a recession
//! direction proving the linear subproblem has no minimizer.
//!
//! Modules:
//!
//! * [`solver`]: the Frank-Wolfe iteration with the closed-form short step.
//! * [`oracles`]: feasible sets, recession generators and linear minimization
//!   oracles.
//! * [`lp`]: dense two-phase simplex backing the polyhedral oracle.
//! * [`objectives`]: smooth objectives with analytic gradients and constants.
//! * [`certify`]: runtime checks of the gradient assumptions, the descent
//!   inequality and the `O(1/k)` rate bound.
//! * [`config`], [`report`], [`bench`]: the plumbing behind the `condgrad`
//!   command-line tool.
//!
//! All numerical code is generic over [`Scalar`] (implemented for `f32` and
//! `f64`); the aliases at the crate root fix the scalar to `f64`.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod certify;
pub mod config;
pub mod linalg;
pub mod lp;
pub mod objectives;
pub mod oracles;
pub mod report;
pub mod solver;

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign};

pub use certify::{RateCertificate, ReferenceSolution};
pub use linalg::Matrix;
pub use objectives::Objective;
pub use oracles::{FeasibleSet, OracleOutcome};
pub use solver::{IterateRecord, SolveTrace, SolverConfig, Termination};

/// Floating-point scalar used throughout the crate.
///
/// The associated tolerances are the defaults for each precision; every
/// routine that uses one also accepts an explicit override where it matters.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance on constraint residuals in membership tests.
    const FEASIBILITY_TOL: f64;
    /// Smallest admissible simplex pivot magnitude.
    const PIVOT_TOL: f64;
    /// Entries below this magnitude are treated as zero by the simplex.
    const ZERO_TOL: f64;
    /// Default Frank-Wolfe gap tolerance.
    const GAP_TOL: f64;

    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const FEASIBILITY_TOL: f64 = 1e-9;
    const PIVOT_TOL: f64 = 1e-11;
    const ZERO_TOL: f64 = 1e-13;
    const GAP_TOL: f64 = 1e-8;
}

impl Scalar for f32 {
    const FEASIBILITY_TOL: f64 = 1e-4;
    const PIVOT_TOL: f64 = 1e-5;
    const ZERO_TOL: f64 = 1e-6;
    const GAP_TOL: f64 = 1e-4;
}

/// Dense row-major `f64` matrix.
pub type Matrix64 = linalg::Matrix<f64>;
/// Feasible set over `f64`.
pub type Set64 = oracles::FeasibleSet<f64>;
/// Oracle outcome over `f64`.
pub type Outcome64 = oracles::OracleOutcome<f64>;
/// Solver configuration over `f64`.
pub type Config64 = solver::SolverConfig<f64>;
/// One Frank-Wolfe iterate over `f64`.
pub type Record64 = solver::IterateRecord<f64>;
/// Full solve trace over `f64`.
pub type Trace64 = solver::SolveTrace<f64>;
/// Boxed objective over `f64`.
pub type DynObjective64 = Box<dyn objectives::Objective<f64>>;
/// Rate certificate over `f64`.
pub type Certificate64 = certify::RateCertificate<f64>;
