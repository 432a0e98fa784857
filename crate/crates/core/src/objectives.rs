//! Smooth objectives with analytic gradients and curvature constants.
//!
//! Each objective declares a gradient Lipschitz constant `L` and a
//! strong-convexity modulus `M` (zero when only convex). All of them have
//! strictly positive gradients on `ℝⁿ₊`, which is what makes the linear
//! subproblems over the unbounded sets in [`crate::oracles`] well posed.

use std::fmt;

use thiserror::Error;

use crate::linalg::{self, dot, Matrix};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObjectiveError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("`a` must be strictly positive (entry {0} is not)")]
    NonPositiveLinearTerm(usize),
    #[error("`Q` must be {expected}x{expected}, got {rows}x{cols}")]
    MatrixShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("`Q` must be entrywise nonnegative (entry ({row}, {col}) is negative)")]
    NegativeMatrixEntry { row: usize, col: usize },
    #[error("`{0}` must be positive")]
    NonPositiveParameter(&'static str),
    #[error("need 2*alpha > 3*beta^(3/2)*sqrt(n); got 2*alpha = {lhs}, bound = {rhs}")]
    CurvatureCondition { lhs: f64, rhs: f64 },
    #[error("vector field has dimension {field}, `a` has {linear}")]
    FieldDimension { field: usize, linear: usize },
}

/// A continuously differentiable objective with known curvature constants.
///
/// `value` and `gradient` expect a slice of length [`Objective::dim`].
pub trait Objective<T: Scalar>: Send + Sync {
    fn name(&self) -> &str;
    fn dim(&self) -> usize;
    fn value(&self, x: &[T]) -> T;
    fn gradient(&self, x: &[T]) -> Vec<T>;
    /// Global Lipschitz constant of the gradient.
    fn lipschitz(&self) -> T;
    /// Strong-convexity modulus; `0` when the objective is merely convex.
    fn strong_convexity(&self) -> T {
        T::zero()
    }
    /// Declared, not detected.
    fn is_convex(&self) -> bool {
        true
    }
}

impl<T: Scalar> fmt::Debug for dyn Objective<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective")
            .field("name", &self.name())
            .field("dim", &self.dim())
            .field("lipschitz", &self.lipschitz())
            .field("strong_convexity", &self.strong_convexity())
            .finish()
    }
}

impl<T: Scalar, O: Objective<T> + ?Sized> Objective<T> for Box<O> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[T]) -> T {
        (**self).value(x)
    }
    fn gradient(&self, x: &[T]) -> Vec<T> {
        (**self).gradient(x)
    }
    fn lipschitz(&self) -> T {
        (**self).lipschitz()
    }
    fn strong_convexity(&self) -> T {
        (**self).strong_convexity()
    }
    fn is_convex(&self) -> bool {
        (**self).is_convex()
    }
}

fn check_positive<T: Scalar>(a: &[T]) -> Result<(), ObjectiveError> {
    if a.is_empty() {
        return Err(ObjectiveError::ZeroDimension);
    }
    match a.iter().position(|v| !(*v > T::zero())) {
        Some(i) => Err(ObjectiveError::NonPositiveLinearTerm(i)),
        None => Ok(()),
    }
}

/// `f(x) = aᵀx + xᵀQx`
#[derive(Debug, Clone)]
pub struct Quadratic<T> {
    a: Vec<T>,
    q: Matrix<T>,
    sym: Matrix<T>,
    lipschitz: T,
    modulus: T,
}

impl<T: Scalar> Quadratic<T> {
    /// Requires `a > 0` and `Q ≥ 0` entrywise.
    pub fn new(a: Vec<T>, q: Matrix<T>) -> Result<Self, ObjectiveError> {
        check_positive(&a)?;
        let out = Self::new_unchecked(a, q)?;
        for i in 0..out.q.rows() {
            for j in 0..out.q.cols() {
                if out.q[(i, j)] < T::zero() {
                    return Err(ObjectiveError::NegativeMatrixEntry { row: i, col: j });
                }
            }
        }
        Ok(out)
    }

    /// Only checks shapes; the sign conditions on `a` and `Q` are skipped.
    /// Used to build counterexamples for the condition checks.
    pub fn new_unchecked(a: Vec<T>, q: Matrix<T>) -> Result<Self, ObjectiveError> {
        let n = a.len();
        if n == 0 {
            return Err(ObjectiveError::ZeroDimension);
        }
        if q.rows() != n || q.cols() != n {
            return Err(ObjectiveError::MatrixShape {
                expected: n,
                rows: q.rows(),
                cols: q.cols(),
            });
        }
        // ∇²f = Q + Qᵀ; L is its spectral norm, M its smallest eigenvalue.
        let sym = q.symmetrized();
        let eig = linalg::symmetric_eigenvalues(&sym);
        let lo = eig[0];
        let hi = eig[n - 1];
        Ok(Self {
            a,
            q,
            sym,
            lipschitz: hi.abs().max(lo.abs()),
            modulus: lo.max(T::zero()),
        })
    }

    /// Linear objective `aᵀx` (`Q = 0`).
    pub fn linear(a: Vec<T>) -> Result<Self, ObjectiveError> {
        let n = a.len();
        if n == 0 {
            return Err(ObjectiveError::ZeroDimension);
        }
        Self::new_unchecked(a, Matrix::zeros(n, n))
    }

    pub fn linear_term(&self) -> &[T] {
        &self.a
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.q
    }
}

impl<T: Scalar> Objective<T> for Quadratic<T> {
    fn name(&self) -> &str {
        "quadratic"
    }
    fn dim(&self) -> usize {
        self.a.len()
    }
    fn value(&self, x: &[T]) -> T {
        dot(&self.a, x) + dot(x, &self.q.mul_vec(x))
    }
    fn gradient(&self, x: &[T]) -> Vec<T> {
        self.sym
            .mul_vec(x)
            .iter()
            .zip(&self.a)
            .map(|(&s, &a)| a + s)
            .collect()
    }
    fn lipschitz(&self) -> T {
        self.lipschitz
    }
    fn strong_convexity(&self) -> T {
        self.modulus
    }
}

/// `f(x) = aᵀx + α xᵀx + β eᵀx / √(1 + β xᵀx)` with `e` the all-ones vector.
///
/// The Hessian satisfies `(2α − 3β^{3/2}√n) I ≼ ∇²f ≼ (2α + 3β^{3/2}√n) I`,
/// which gives `M` and `L` directly.
#[derive(Debug, Clone)]
pub struct RegularizedNorm<T> {
    a: Vec<T>,
    alpha: T,
    beta: T,
}

impl<T: Scalar> RegularizedNorm<T> {
    pub fn new(a: Vec<T>, alpha: T, beta: T) -> Result<Self, ObjectiveError> {
        check_positive(&a)?;
        let out = Self::new_unchecked(a, alpha, beta)?;
        let lhs = T::of(2.0) * alpha;
        let rhs = out.curvature_spread();
        if !(lhs > rhs) {
            return Err(ObjectiveError::CurvatureCondition {
                lhs: lhs.to_f64_lossy(),
                rhs: rhs.to_f64_lossy(),
            });
        }
        Ok(out)
    }

    /// Skips the positivity and curvature conditions.
    pub fn new_unchecked(a: Vec<T>, alpha: T, beta: T) -> Result<Self, ObjectiveError> {
        if a.is_empty() {
            return Err(ObjectiveError::ZeroDimension);
        }
        if !(alpha > T::zero()) {
            return Err(ObjectiveError::NonPositiveParameter("alpha"));
        }
        if !(beta > T::zero()) {
            return Err(ObjectiveError::NonPositiveParameter("beta"));
        }
        Ok(Self { a, alpha, beta })
    }

    /// `3 β^{3/2} √n`
    fn curvature_spread(&self) -> T {
        T::of(3.0) * self.beta.powf(T::of(1.5)) * T::of(self.a.len() as f64).sqrt()
    }
}

impl<T: Scalar> Objective<T> for RegularizedNorm<T> {
    fn name(&self) -> &str {
        "regularized_norm"
    }
    fn dim(&self) -> usize {
        self.a.len()
    }
    fn value(&self, x: &[T]) -> T {
        let xx = dot(x, x);
        let ex = x.iter().fold(T::zero(), |s, &v| s + v);
        dot(&self.a, x) + self.alpha * xx + self.beta * ex / (T::one() + self.beta * xx).sqrt()
    }
    fn gradient(&self, x: &[T]) -> Vec<T> {
        let xx = dot(x, x);
        let ex = x.iter().fold(T::zero(), |s, &v| s + v);
        let u = T::one() + self.beta * xx;
        let along_e = self.beta / u.sqrt();
        let along_x = self.beta * self.beta * ex / (u * u.sqrt());
        let two_alpha = T::of(2.0) * self.alpha;
        self.a
            .iter()
            .zip(x)
            .map(|(&a, &xi)| a + two_alpha * xi + along_e - along_x * xi)
            .collect()
    }
    fn lipschitz(&self) -> T {
        T::of(2.0) * self.alpha + self.curvature_spread()
    }
    fn strong_convexity(&self) -> T {
        (T::of(2.0) * self.alpha - self.curvature_spread()).max(T::zero())
    }
}

/// `f(x) = aᵀx + √(1 + β xᵀx)`; `L = β`, convex but not strongly convex.
#[derive(Debug, Clone)]
pub struct SqrtQuadratic<T> {
    a: Vec<T>,
    beta: T,
}

impl<T: Scalar> SqrtQuadratic<T> {
    pub fn new(a: Vec<T>, beta: T) -> Result<Self, ObjectiveError> {
        check_positive(&a)?;
        Self::new_unchecked(a, beta)
    }

    pub fn new_unchecked(a: Vec<T>, beta: T) -> Result<Self, ObjectiveError> {
        if a.is_empty() {
            return Err(ObjectiveError::ZeroDimension);
        }
        if !(beta > T::zero()) {
            return Err(ObjectiveError::NonPositiveParameter("beta"));
        }
        Ok(Self { a, beta })
    }
}

impl<T: Scalar> Objective<T> for SqrtQuadratic<T> {
    fn name(&self) -> &str {
        "sqrt_quadratic"
    }
    fn dim(&self) -> usize {
        self.a.len()
    }
    fn value(&self, x: &[T]) -> T {
        dot(&self.a, x) + (T::one() + self.beta * dot(x, x)).sqrt()
    }
    fn gradient(&self, x: &[T]) -> Vec<T> {
        let w = self.beta / (T::one() + self.beta * dot(x, x)).sqrt();
        self.a.iter().zip(x).map(|(&a, &xi)| a + w * xi).collect()
    }
    fn lipschitz(&self) -> T {
        self.beta
    }
}

/// `f(x) = ln Σ exp(xᵢ)`; gradient is the softmax, `L = 1`.
#[derive(Debug, Clone)]
pub struct LogSumExp {
    dim: usize,
}

impl LogSumExp {
    pub fn new(dim: usize) -> Result<Self, ObjectiveError> {
        if dim == 0 {
            return Err(ObjectiveError::ZeroDimension);
        }
        Ok(Self { dim })
    }
}

fn max_of<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::neg_infinity(), |m, &v| m.max(v))
}

impl<T: Scalar> Objective<T> for LogSumExp {
    fn name(&self) -> &str {
        "log_sum_exp"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn value(&self, x: &[T]) -> T {
        let m = max_of(x);
        m + x.iter().fold(T::zero(), |s, &v| s + (v - m).exp()).ln()
    }
    fn gradient(&self, x: &[T]) -> Vec<T> {
        let m = max_of(x);
        let w: Vec<T> = x.iter().map(|&v| (v - m).exp()).collect();
        let total = w.iter().fold(T::zero(), |s, &v| s + v);
        w.into_iter().map(|v| v / total).collect()
    }
    fn lipschitz(&self) -> T {
        T::one()
    }
}

/// A differentiable map `G: ℝⁿ → ℝⁿ` with its Jacobian.
pub trait VectorField<T: Scalar>: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[T]) -> Vec<T>;
    /// `G′(x)`, rows indexed by output component.
    fn jacobian(&self, x: &[T]) -> Matrix<T>;
}

/// `G(x) = Q x`
#[derive(Debug, Clone)]
pub struct LinearField<T> {
    pub q: Matrix<T>,
}

impl<T: Scalar> VectorField<T> for LinearField<T> {
    fn dim(&self) -> usize {
        self.q.rows()
    }
    fn value(&self, x: &[T]) -> Vec<T> {
        self.q.mul_vec(x)
    }
    fn jacobian(&self, _x: &[T]) -> Matrix<T> {
        self.q.clone()
    }
}

/// `G(x) = α x + β e / √(1 + β xᵀx)`
#[derive(Debug, Clone)]
pub struct DampedShiftField<T> {
    pub dim: usize,
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> VectorField<T> for DampedShiftField<T> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn value(&self, x: &[T]) -> Vec<T> {
        let shift = self.beta / (T::one() + self.beta * dot(x, x)).sqrt();
        x.iter().map(|&xi| self.alpha * xi + shift).collect()
    }
    fn jacobian(&self, x: &[T]) -> Matrix<T> {
        // α I − β² / (1 + β xᵀx)^{3/2} · e xᵀ
        let u = T::one() + self.beta * dot(x, x);
        let w = self.beta * self.beta / (u * u.sqrt());
        let mut j = Matrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for (c, &xc) in x.iter().enumerate() {
                j[(r, c)] = -w * xc;
            }
            j[(r, r)] += self.alpha;
        }
        j
    }
}

/// Parameters of `f(x) = aᵀx + G(x)ᵀx`.
pub struct GFormSpec<T: Scalar> {
    pub a: Vec<T>,
    pub field: Box<dyn VectorField<T>>,
    /// Lipschitz constant of `G`.
    pub l1: T,
    /// Lipschitz constant of `x ↦ G′(x)ᵀx`.
    pub l2: T,
}

/// Objective assembled from a [`GFormSpec`].
///
/// The gradient is `a + G(x) + G′(x)ᵀx`; the transpose matters only when the
/// Jacobian is not symmetric.
pub struct GForm<T: Scalar> {
    spec: GFormSpec<T>,
}

impl<T: Scalar> fmt::Debug for GForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GForm")
            .field("a", &self.spec.a)
            .field("l1", &self.spec.l1)
            .field("l2", &self.spec.l2)
            .finish_non_exhaustive()
    }
}

pub fn from_g_form<T: Scalar>(spec: GFormSpec<T>) -> Result<GForm<T>, ObjectiveError> {
    check_positive(&spec.a)?;
    if spec.field.dim() != spec.a.len() {
        return Err(ObjectiveError::FieldDimension {
            field: spec.field.dim(),
            linear: spec.a.len(),
        });
    }
    if !(spec.l1 >= T::zero()) {
        return Err(ObjectiveError::NonPositiveParameter("l1"));
    }
    if !(spec.l2 >= T::zero()) {
        return Err(ObjectiveError::NonPositiveParameter("l2"));
    }
    Ok(GForm { spec })
}

impl<T: Scalar> Objective<T> for GForm<T> {
    fn name(&self) -> &str {
        "g_form"
    }
    fn dim(&self) -> usize {
        self.spec.a.len()
    }
    fn value(&self, x: &[T]) -> T {
        dot(&self.spec.a, x) + dot(&self.spec.field.value(x), x)
    }
    fn gradient(&self, x: &[T]) -> Vec<T> {
        let g = self.spec.field.value(x);
        let jt_x = self.spec.field.jacobian(x).tr_mul_vec(x);
        self.spec
            .a
            .iter()
            .zip(g.iter().zip(&jt_x))
            .map(|(&a, (&g, &j))| a + g + j)
            .collect()
    }
    fn lipschitz(&self) -> T {
        self.spec.l1 + self.spec.l2
    }
}

/// Default central-difference step `1e-6 · max(1, ‖x‖)`.
pub fn default_fd_step<T: Scalar>(x: &[T]) -> T {
    T::of(1e-6) * T::one().max(linalg::norm(x))
}

/// Central-difference gradient of `f` at `x` with step `h`.
pub fn finite_difference_gradient<T, F>(f: F, x: &[T], h: T) -> Vec<T>
where
    T: Scalar,
    F: Fn(&[T]) -> T,
{
    let mut probe = x.to_vec();
    let two_h = h + h;
    (0..x.len())
        .map(|i| {
            let xi = x[i];
            probe[i] = xi + h;
            let up = f(&probe);
            probe[i] = xi - h;
            let down = f(&probe);
            probe[i] = xi;
            (up - down) / two_h
        })
        .collect()
}

/// `‖g − ĝ‖ / max(‖g‖, 1)` between an analytic and a finite-difference gradient.
pub fn gradient_relative_error<T: Scalar, O: Objective<T> + ?Sized>(objective: &O, x: &[T]) -> T {
    let analytic = objective.gradient(x);
    let numeric = finite_difference_gradient(|y| objective.value(y), x, default_fd_step(x));
    linalg::norm(&linalg::sub(&analytic, &numeric)) / linalg::norm(&analytic).max(T::one())
}
