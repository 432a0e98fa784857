//! Feasible sets, their recession cones, and linear minimization oracles.
//!
//! Every supported set lives in the nonnegative orthant and has a finitely
//! generated recession cone, so the dual-interior condition on a cost vector
//! `c` reduces to `cᵀd > 0` for every generator `d`. When it fails, the oracle
//! returns the offending direction instead of a point.

use rand::Rng;
use thiserror::Error;

use crate::linalg::{self, dot, Matrix};
use crate::lp::{self, LpError, LpOutcome, StandardFormLp};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SetError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("polyhedron matrix must be strictly positive (entry ({row}, {col}) is not)")]
    NonPositiveMatrix { row: usize, col: usize },
    #[error("polyhedron right-hand side must be strictly positive (entry {0} is not)")]
    NonPositiveRhs(usize),
    #[error("polyhedron has {rows} rows but b has {b_len} entries")]
    RhsLength { rows: usize, b_len: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("dimension mismatch: set has dimension {expected}, vector has {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("polyhedron is empty")]
    InfeasibleSet,
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// `{x ≥ 0 : A x ≥ b}` with `A > 0` and `b > 0` entrywise.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron<T> {
    a: Matrix<T>,
    b: Vec<T>,
}

impl<T: Scalar> Polyhedron<T> {
    pub fn new(a: Matrix<T>, b: Vec<T>) -> Result<Self, SetError> {
        if a.rows() != b.len() {
            return Err(SetError::RhsLength {
                rows: a.rows(),
                b_len: b.len(),
            });
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if !(a[(i, j)] > T::zero()) {
                    return Err(SetError::NonPositiveMatrix { row: i, col: j });
                }
            }
        }
        if let Some(i) = b.iter().position(|v| !(*v > T::zero())) {
            return Err(SetError::NonPositiveRhs(i));
        }
        Ok(Self { a, b })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn rhs(&self) -> &[T] {
        &self.b
    }
}

/// The closed set of feasible set kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum FeasibleSet<T> {
    /// `{x ≥ 0 : x₁ + … + xₙ ≥ 1}`
    HalfspaceSimplex { dim: usize },
    /// `{x ≥ 0 : x₁ ⋯ xₙ ≥ 1}`
    ProductSet { dim: usize },
    /// `{x ≥ 0 : A x ≥ b}`
    Polyhedron(Polyhedron<T>),
    /// `{x : x₁ ≥ x₂ ≥ … ≥ xₙ ≥ 0}`
    MonotoneNonnegCone { dim: usize },
    /// `ℝⁿ₊`
    NonnegOrthant { dim: usize },
}

/// Why a linear subproblem has no minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unboundedness {
    /// `cᵀd < 0` along a recession direction: the infimum is `-∞`.
    DescentRay,
    /// The infimum is finite but not attained (product set with a zero cost
    /// component); `cᵀd = 0` along the reported direction.
    InfimumNotAttained,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome<T> {
    /// A minimizer `point` and its objective value.
    Attained { point: Vec<T>, value: T },
    /// No minimizer; `direction` is a unit vector in the recession cone.
    Unbounded {
        direction: Vec<T>,
        reason: Unboundedness,
    },
}

impl<T: Scalar> OracleOutcome<T> {
    pub fn point(&self) -> Option<&[T]> {
        match self {
            Self::Attained { point, .. } => Some(point),
            Self::Unbounded { .. } => None,
        }
    }

    pub fn value(&self) -> Option<T> {
        match self {
            Self::Attained { value, .. } => Some(*value),
            Self::Unbounded { .. } => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Self::Unbounded { .. })
    }
}

impl<T: Scalar> FeasibleSet<T> {
    pub fn halfspace_simplex(dim: usize) -> Result<Self, SetError> {
        nonzero(dim).map(|dim| Self::HalfspaceSimplex { dim })
    }

    pub fn product_set(dim: usize) -> Result<Self, SetError> {
        nonzero(dim).map(|dim| Self::ProductSet { dim })
    }

    pub fn polyhedron(a: Matrix<T>, b: Vec<T>) -> Result<Self, SetError> {
        Polyhedron::new(a, b).map(Self::Polyhedron)
    }

    pub fn monotone_cone(dim: usize) -> Result<Self, SetError> {
        nonzero(dim).map(|dim| Self::MonotoneNonnegCone { dim })
    }

    pub fn orthant(dim: usize) -> Result<Self, SetError> {
        nonzero(dim).map(|dim| Self::NonnegOrthant { dim })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::HalfspaceSimplex { dim }
            | Self::ProductSet { dim }
            | Self::MonotoneNonnegCone { dim }
            | Self::NonnegOrthant { dim } => *dim,
            Self::Polyhedron(p) => p.a.cols(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::HalfspaceSimplex { .. } => "halfspace_simplex",
            Self::ProductSet { .. } => "product_set",
            Self::Polyhedron(_) => "polyhedron",
            Self::MonotoneNonnegCone { .. } => "monotone_cone",
            Self::NonnegOrthant { .. } => "orthant",
        }
    }

    pub fn is_cone(&self) -> bool {
        matches!(
            self,
            Self::MonotoneNonnegCone { .. } | Self::NonnegOrthant { .. }
        )
    }

    /// Membership with the default absolute residual tolerance.
    pub fn contains(&self, x: &[T]) -> bool {
        self.contains_with(x, T::of(T::FEASIBILITY_TOL))
    }

    pub fn contains_with(&self, x: &[T], tol: T) -> bool {
        if x.len() != self.dim() || x.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let nonneg = || x.iter().all(|&v| v >= -tol);
        match self {
            Self::HalfspaceSimplex { .. } => {
                nonneg() && x.iter().fold(T::zero(), |a, &v| a + v) >= T::one() - tol
            }
            Self::ProductSet { .. } => {
                nonneg() && x.iter().fold(T::one(), |a, &v| a * v) >= T::one() - tol
            }
            Self::Polyhedron(p) => {
                nonneg()
                    && p.a
                        .mul_vec(x)
                        .iter()
                        .zip(&p.b)
                        .all(|(&ax, &b)| ax >= b - tol)
            }
            Self::MonotoneNonnegCone { .. } => {
                x.windows(2).all(|w| w[0] >= w[1] - tol) && x.last().is_some_and(|&v| v >= -tol)
            }
            Self::NonnegOrthant { .. } => nonneg(),
        }
    }

    /// Unit vectors generating the recession cone.
    pub fn recession_generators(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        match self {
            Self::MonotoneNonnegCone { .. } => (1..=n)
                .map(|i| {
                    let w = T::one() / T::of(i as f64).sqrt();
                    (0..n).map(|j| if j < i { w } else { T::zero() }).collect()
                })
                .collect(),
            // Sets (a), (b), (c) with A > 0 and the orthant all recede along ℝⁿ₊.
            _ => (0..n).map(|i| linalg::unit_vector(n, i)).collect(),
        }
    }

    /// A canonical feasible point.
    pub fn anchor(&self) -> Vec<T> {
        let n = self.dim();
        match self {
            Self::HalfspaceSimplex { .. } => linalg::unit_vector(n, 0),
            Self::ProductSet { .. } => vec![T::one(); n],
            Self::Polyhedron(p) => {
                let ones = vec![T::one(); n];
                let t =
                    p.a.mul_vec(&ones)
                        .iter()
                        .zip(&p.b)
                        .fold(T::zero(), |acc, (&ax, &b)| acc.max(b / ax));
                vec![t; n]
            }
            Self::MonotoneNonnegCone { .. } | Self::NonnegOrthant { .. } => vec![T::zero(); n],
        }
    }

    /// Draws a feasible point from the box `[0, side]ⁿ`.
    ///
    /// Uniform box samples are rejected until one is feasible (monotone-cone
    /// samples are sorted first). If none of the first few are, the last one
    /// is scaled up onto the constraint surface, which may leave the box.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R, side: T) -> Vec<T> {
        const TRIES: usize = 64;
        let n = self.dim();
        let side = side.to_f64_lossy();
        let mut y = Vec::new();
        for _ in 0..TRIES {
            y = (0..n).map(|_| T::of(rng.gen_range(0.0..side))).collect();
            if let Self::MonotoneNonnegCone { .. } = self {
                y.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
            }
            if self.contains_with(&y, T::zero()) {
                return y;
            }
        }
        self.push_inside(y)
    }

    fn push_inside(&self, mut y: Vec<T>) -> Vec<T> {
        let n = self.dim();
        match self {
            Self::HalfspaceSimplex { .. } => {
                let s = y.iter().fold(T::zero(), |a, &v| a + v);
                if s <= T::zero() {
                    return self.anchor();
                }
                y = linalg::scale(&y, T::one() / s);
            }
            Self::ProductSet { .. } => {
                let logsum = y.iter().fold(T::zero(), |a, &v| a + v.ln());
                if !logsum.is_finite() {
                    return self.anchor();
                }
                y = linalg::scale(&y, (-logsum / T::of(n as f64)).exp());
            }
            Self::Polyhedron(p) => {
                let t =
                    p.a.mul_vec(&y)
                        .iter()
                        .zip(&p.b)
                        .fold(T::zero(), |acc, (&ax, &b)| acc.max(b / ax));
                if !t.is_finite() {
                    return self.anchor();
                }
                y = linalg::scale(&y, t);
            }
            Self::MonotoneNonnegCone { .. } | Self::NonnegOrthant { .. } => return y,
        }
        // Land strictly inside after rounding on the constraint surface.
        if !self.contains_with(&y, T::zero()) {
            y = linalg::scale(&y, T::one() + T::of(1e-12));
        }
        y
    }
}

fn nonzero(dim: usize) -> Result<usize, SetError> {
    if dim == 0 {
        Err(SetError::ZeroDimension)
    } else {
        Ok(dim)
    }
}

fn check_dim(expected: usize, actual: usize) -> Result<(), OracleError> {
    if expected == actual {
        Ok(())
    } else {
        Err(OracleError::Dimension { expected, actual })
    }
}

/// Minimizes `cᵀ(p − x)` over the set.
///
/// The attained value is reported relative to `x`; it is `≤ 0` whenever `x`
/// is feasible.
pub fn lo_oracle<T: Scalar>(
    set: &FeasibleSet<T>,
    c: &[T],
    x: &[T],
) -> Result<OracleOutcome<T>, OracleError> {
    check_dim(set.dim(), c.len())?;
    check_dim(set.dim(), x.len())?;
    let outcome = match set {
        FeasibleSet::HalfspaceSimplex { .. } => halfspace_simplex_oracle(c),
        FeasibleSet::ProductSet { .. } => product_set_oracle(c),
        FeasibleSet::Polyhedron(p) => polyhedron_oracle(p, c)?,
        FeasibleSet::MonotoneNonnegCone { .. } => cone_oracle(ConeKind::MonotoneNonneg, c),
        FeasibleSet::NonnegOrthant { .. } => cone_oracle(ConeKind::NonnegOrthant, c),
    };
    Ok(match outcome {
        OracleOutcome::Attained { point, value } => {
            let value = value - dot(c, x);
            OracleOutcome::Attained { point, value }
        }
        unbounded => unbounded,
    })
}

fn descent_ray<T: Scalar>(n: usize, i: usize) -> OracleOutcome<T> {
    OracleOutcome::Unbounded {
        direction: linalg::unit_vector(n, i),
        reason: Unboundedness::DescentRay,
    }
}

/// `min cᵀp` over `{p ≥ 0 : Σp ≥ 1}`; value is absolute.
///
/// With `c ≥ 0` the minimum sits at the vertex `e_i` for the smallest `cᵢ`
/// (lowest index on ties). Any negative component makes `e_i` a descent ray.
pub fn halfspace_simplex_oracle<T: Scalar>(c: &[T]) -> OracleOutcome<T> {
    let n = c.len();
    if let Some(i) = c.iter().position(|&v| v < T::zero()) {
        return descent_ray(n, i);
    }
    let (best, value) = argmin_lowest(c);
    OracleOutcome::Attained {
        point: linalg::unit_vector(n, best),
        value,
    }
}

/// `min cᵀp` over `{p ≥ 0 : Πp ≥ 1}`; value is absolute.
///
/// For `c > 0` the stationarity conditions give `pᵢ = g / cᵢ` with `g` the
/// geometric mean of `c`, and optimal value `n g`.
pub fn product_set_oracle<T: Scalar>(c: &[T]) -> OracleOutcome<T> {
    let n = c.len();
    if let Some(i) = c.iter().position(|&v| v < T::zero()) {
        return descent_ray(n, i);
    }
    if let Some(i) = c.iter().position(|&v| v == T::zero()) {
        return OracleOutcome::Unbounded {
            direction: linalg::unit_vector(n, i),
            reason: Unboundedness::InfimumNotAttained,
        };
    }
    let mean_log = c.iter().fold(T::zero(), |a, &v| a + v.ln()) / T::of(n as f64);
    let g = mean_log.exp();
    let point = c.iter().map(|&ci| g / ci).collect::<Vec<_>>();
    let value = dot(c, &point);
    OracleOutcome::Attained { point, value }
}

/// `min cᵀp` over `{p ≥ 0 : A p ≥ b}` via the simplex on
/// `[A | −I] (p, s) = b`, `(p, s) ≥ 0`; value is absolute.
pub fn polyhedron_oracle<T: Scalar>(
    set: &Polyhedron<T>,
    c: &[T],
) -> Result<OracleOutcome<T>, OracleError> {
    let m = set.a.rows();
    let n = set.a.cols();
    check_dim(n, c.len())?;
    let mut data = Vec::with_capacity(m * (n + m));
    for i in 0..m {
        data.extend_from_slice(set.a.row(i));
        data.extend((0..m).map(|j| if i == j { -T::one() } else { T::zero() }));
    }
    let a = Matrix::from_row_major(m, n + m, data).expect("standard-form shape");
    let mut cost = c.to_vec();
    cost.resize(n + m, T::zero());
    let problem = StandardFormLp::new(a, set.b.clone(), cost)?;
    match lp::solve_lp(&problem)? {
        LpOutcome::Optimal { mut x, .. } => {
            x.truncate(n);
            let value = dot(c, &x);
            Ok(OracleOutcome::Attained { point: x, value })
        }
        LpOutcome::Unbounded { ray } => {
            let direction = linalg::normalized(&ray[..n]).ok_or(OracleError::InfeasibleSet)?;
            Ok(OracleOutcome::Unbounded {
                direction,
                reason: Unboundedness::DescentRay,
            })
        }
        LpOutcome::Infeasible => Err(OracleError::InfeasibleSet),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    MonotoneNonneg,
    NonnegOrthant,
}

/// `min cᵀp` over a cone: `0` at the apex when `c` is in the dual cone,
/// otherwise a generator with `cᵀg < 0`.
///
/// For the monotone cone the generators are the normalized prefix vectors
/// `e₁ + … + eᵢ`, so membership in the dual reduces to nonnegative prefix
/// sums of `c`.
pub fn cone_oracle<T: Scalar>(kind: ConeKind, c: &[T]) -> OracleOutcome<T> {
    let n = c.len();
    match kind {
        ConeKind::NonnegOrthant => {
            if let Some(i) = c.iter().position(|&v| v < T::zero()) {
                return descent_ray(n, i);
            }
        }
        ConeKind::MonotoneNonneg => {
            let mut prefix = T::zero();
            for (i, &ci) in c.iter().enumerate() {
                prefix += ci;
                if prefix < T::zero() {
                    let w = T::one() / T::of((i + 1) as f64).sqrt();
                    let direction = (0..n).map(|j| if j <= i { w } else { T::zero() }).collect();
                    return OracleOutcome::Unbounded {
                        direction,
                        reason: Unboundedness::DescentRay,
                    };
                }
            }
        }
    }
    OracleOutcome::Attained {
        point: vec![T::zero(); n],
        value: T::zero(),
    }
}

fn argmin_lowest<T: Scalar>(c: &[T]) -> (usize, T) {
    let mut best = 0;
    for (i, &v) in c.iter().enumerate().skip(1) {
        if v < c[best] {
            best = i;
        }
    }
    (best, c[best])
}
