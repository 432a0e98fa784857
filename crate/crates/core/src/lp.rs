//! Dense two-phase simplex for standard-form linear programs
//!
//! ```text
//! minimize cᵀx  subject to  A x = b,  x ≥ 0
//! ```
//!
//! Pivoting follows Bland's rule in both phases, so the method terminates on
//! degenerate problems without perturbation. Unbounded problems come back with
//! a ray `r ≥ 0`, `A r = 0`, `cᵀr < 0`.

use thiserror::Error;

use crate::linalg::{dot, Matrix};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("dimension mismatch: A is {rows}x{cols}, b has {b_len} entries, c has {c_len}")]
    Dimension {
        rows: usize,
        cols: usize,
        b_len: usize,
        c_len: usize,
    },
    #[error("non-finite entry in problem data")]
    NonFinite,
    #[error("pivot magnitude {magnitude:e} below tolerance")]
    NumericalFailure { magnitude: f64 },
    #[error("pivot count exceeded the basis bound {limit}")]
    PivotLimit { limit: usize },
}

/// `min cᵀx` s.t. `A x = b`, `x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardFormLp<T> {
    pub a: Matrix<T>,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

impl<T: Scalar> StandardFormLp<T> {
    pub fn new(a: Matrix<T>, b: Vec<T>, c: Vec<T>) -> Result<Self, LpError> {
        if a.rows() != b.len() || a.cols() != c.len() {
            return Err(LpError::Dimension {
                rows: a.rows(),
                cols: a.cols(),
                b_len: b.len(),
                c_len: c.len(),
            });
        }
        let finite = a
            .as_slice()
            .iter()
            .chain(&b)
            .chain(&c)
            .all(|v| v.is_finite());
        if !finite {
            return Err(LpError::NonFinite);
        }
        Ok(Self { a, b, c })
    }

    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn num_vars(&self) -> usize {
        self.a.cols()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Unbounded { ray: Vec<T> },
    Infeasible,
}

#[derive(Debug, Clone, Copy)]
pub struct LpTolerances<T> {
    /// Minimum admissible pivot magnitude.
    pub pivot: T,
    /// Column entries and reduced costs at or below this are treated as zero.
    pub zero: T,
    /// Phase-one residual above which the problem is declared infeasible.
    pub feasibility: T,
}

impl<T: Scalar> Default for LpTolerances<T> {
    fn default() -> Self {
        Self {
            pivot: T::of(T::PIVOT_TOL),
            zero: T::of(T::ZERO_TOL),
            feasibility: T::of(T::FEASIBILITY_TOL),
        }
    }
}

/// Solves `lp` with default tolerances.
pub fn solve_lp<T: Scalar>(lp: &StandardFormLp<T>) -> Result<LpOutcome<T>, LpError> {
    solve_lp_with(lp, &LpTolerances::default())
}

pub fn solve_lp_with<T: Scalar>(
    lp: &StandardFormLp<T>,
    tol: &LpTolerances<T>,
) -> Result<LpOutcome<T>, LpError> {
    let m = lp.num_rows();
    let n = lp.num_vars();
    let mut tab = Tableau::phase_one(lp);
    let limit = basis_count_bound(n + m, m);

    // Phase one: minimize the sum of artificials.
    let mut phase_one_cost = vec![T::zero(); n + m];
    for c in &mut phase_one_cost[n..] {
        *c = T::one();
    }
    match tab.run(&phase_one_cost, n + m, tol, limit)? {
        Phase::Optimal => {}
        // The phase-one objective is bounded below by zero.
        Phase::Unbounded { .. } => unreachable!("phase one cannot be unbounded"),
    }
    let residual: T = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&j, _)| j >= n)
        .fold(T::zero(), |acc, (_, &r)| acc + r);
    let scale = lp.b.iter().fold(T::one(), |acc, v| acc.max(v.abs()));
    if residual > tol.feasibility * scale {
        return Ok(LpOutcome::Infeasible);
    }
    tab.drive_out_artificials(n, tol);

    // Phase two on the original columns only.
    let mut cost = lp.c.clone();
    cost.resize(n + m, T::zero());
    match tab.run(&cost, n, tol, limit)? {
        Phase::Optimal => {
            let mut x = vec![T::zero(); n];
            for (&j, &r) in tab.basis.iter().zip(&tab.rhs) {
                if j < n {
                    x[j] = if r < T::zero() && r > -tol.feasibility {
                        T::zero()
                    } else {
                        r
                    };
                }
            }
            let value = dot(&lp.c, &x);
            Ok(LpOutcome::Optimal { x, value })
        }
        Phase::Unbounded { entering } => {
            let mut ray = vec![T::zero(); n];
            ray[entering] = T::one();
            for (i, &j) in tab.basis.iter().enumerate() {
                if j < n {
                    ray[j] = (-tab.rows[i][entering]).max(T::zero());
                }
            }
            Ok(LpOutcome::Unbounded { ray })
        }
    }
}

/// `C(total, chosen)` saturating at `usize::MAX`.
fn basis_count_bound(total: usize, chosen: usize) -> usize {
    let k = chosen.min(total - chosen);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (total - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

enum Phase {
    Optimal,
    Unbounded { entering: usize },
}

/// Canonical-form tableau: `rows[i]` expresses basic variable `basis[i]`.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    pivots: usize,
}

impl<T: Scalar> Tableau<T> {
    /// `[A | I]` with one artificial per row, rows sign-flipped so `b ≥ 0`.
    fn phase_one(lp: &StandardFormLp<T>) -> Self {
        let m = lp.num_rows();
        let n = lp.num_vars();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for i in 0..m {
            let flip = lp.b[i] < T::zero();
            let sign = if flip { -T::one() } else { T::one() };
            let mut row: Vec<T> = lp.a.row(i).iter().map(|&v| v * sign).collect();
            row.resize(n + m, T::zero());
            row[n + i] = T::one();
            rows.push(row);
            rhs.push(lp.b[i] * sign);
        }
        Self {
            rows,
            rhs,
            basis: (n..n + m).collect(),
            pivots: 0,
        }
    }

    fn run(
        &mut self,
        cost: &[T],
        allowed: usize,
        tol: &LpTolerances<T>,
        limit: usize,
    ) -> Result<Phase, LpError> {
        let mut phase_pivots = 0usize;
        loop {
            let Some(entering) = self.entering_column(cost, allowed, tol) else {
                return Ok(Phase::Optimal);
            };
            let Some(leaving) = self.leaving_row(entering, tol) else {
                return Ok(Phase::Unbounded { entering });
            };
            let magnitude = self.rows[leaving][entering];
            if magnitude.abs() < tol.pivot {
                return Err(LpError::NumericalFailure {
                    magnitude: magnitude.to_f64_lossy(),
                });
            }
            self.pivot(leaving, entering);
            phase_pivots += 1;
            if phase_pivots > limit {
                return Err(LpError::PivotLimit { limit });
            }
        }
    }

    /// Bland: lowest-index nonbasic column with negative reduced cost.
    fn entering_column(&self, cost: &[T], allowed: usize, tol: &LpTolerances<T>) -> Option<usize> {
        let mut is_basic = vec![false; cost.len()];
        for &j in &self.basis {
            is_basic[j] = true;
        }
        (0..allowed).find(|&j| {
            if is_basic[j] {
                return false;
            }
            let reduced = self
                .basis
                .iter()
                .zip(&self.rows)
                .fold(cost[j], |acc, (&bj, row)| acc - cost[bj] * row[j]);
            reduced < -tol.zero
        })
    }

    /// Minimum ratio test; ties go to the lowest basic variable index.
    fn leaving_row(&self, entering: usize, tol: &LpTolerances<T>) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let a = row[entering];
            if a <= tol.zero {
                continue;
            }
            let ratio = self.rhs[i].max(T::zero()) / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    let tie = (ratio - br).abs() <= tol.zero * (T::one() + br.abs());
                    if (!tie && ratio < br) || (tie && self.basis[i] < self.basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        self.rhs[r] /= p;
        self.rows[r][col] = T::one();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r];
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][col];
            if f == T::zero() {
                continue;
            }
            for (v, &pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.rows[i][col] = T::zero();
            self.rhs[i] -= f * pivot_rhs;
        }
        self.basis[r] = col;
        self.pivots += 1;
    }

    /// Pivots zero-level artificials out of the basis; rows with no usable
    /// original column are redundant and dropped.
    fn drive_out_artificials(&mut self, n: usize, tol: &LpTolerances<T>) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < n {
                i += 1;
                continue;
            }
            let col = (0..n).find(|&j| self.rows[i][j].abs() >= tol.pivot);
            match col {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
