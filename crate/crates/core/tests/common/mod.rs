//! Brute-force references shared by the integration tests.
//!
//! None of these call into the oracles they are used to check.

#![allow(dead_code)]

use condgrad::Matrix64;

/// Solves a square system by Gaussian elimination with partial pivoting.
/// Returns `None` for (numerically) singular systems.
pub fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (dst, src) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{x ≥ 0 : A x ≥ b}` found by intersecting every choice of `n`
/// active constraints.
pub fn polyhedron_vertices(a: &Matrix64, b: &[f64]) -> Vec<Vec<f64>> {
    let (m, n) = (a.rows(), a.cols());
    let constraint = |i: usize| -> (Vec<f64>, f64) {
        if i < m {
            (a.row(i).to_vec(), b[i])
        } else {
            let mut e = vec![0.0; n];
            e[i - m] = 1.0;
            (e, 0.0)
        }
    };
    let mut out = Vec::new();
    for active in subsets(m + n, n) {
        let (rows, rhs): (Vec<_>, Vec<_>) = active.iter().map(|&i| constraint(i)).unzip();
        let Some(x) = solve_square(rows, rhs) else {
            continue;
        };
        let feasible =
            x.iter().all(|&v| v >= -1e-9) && (0..m).all(|i| dot(a.row(i), &x) >= b[i] - 1e-9);
        if feasible {
            out.push(x);
        }
    }
    out
}

/// `min cᵀx` over a vertex list.
pub fn vertex_min(c: &[f64], vertices: &[Vec<f64>]) -> f64 {
    vertices
        .iter()
        .map(|v| dot(c, v))
        .fold(f64::INFINITY, f64::min)
}

/// Optimal value of `min cᵀx` s.t. `A x = b`, `x ≥ 0` over all basic
/// feasible solutions; `None` when there are none.
pub fn lp_brute_force(a: &Matrix64, b: &[f64], c: &[f64]) -> Option<f64> {
    let (m, n) = (a.rows(), a.cols());
    let mut best: Option<f64> = None;
    for basis in subsets(n, m) {
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|i| basis.iter().map(|&j| a[(i, j)]).collect())
            .collect();
        let Some(xb) = solve_square(rows, b.to_vec()) else {
            continue;
        };
        if xb.iter().any(|&v| v < -1e-9) {
            continue;
        }
        let value: f64 = basis.iter().zip(&xb).map(|(&j, &v)| c[j] * v).sum();
        best = Some(best.map_or(value, |bv: f64| bv.min(value)));
    }
    best
}

/// `min cᵀx` over `{x > 0 : Πx = 1}` by a zooming grid in log coordinates
/// `yᵢ = ln xᵢ`, `Σy = 0`.
pub fn product_surface_min(c: &[f64]) -> f64 {
    let n = c.len();
    let value = |free: &[f64]| -> f64 {
        let last = -free.iter().sum::<f64>();
        free.iter()
            .chain(std::iter::once(&last))
            .zip(c)
            .map(|(y, ci)| ci * y.exp())
            .sum()
    };
    if n == 1 {
        return c[0];
    }
    let dims = n - 1;
    let per_axis = 9usize;
    let spread = c.iter().map(|v| v.ln().abs()).fold(0.0, f64::max);
    let mut center = vec![0.0; dims];
    let mut half = 2.0 * spread + 1.0;
    let mut best = value(&center);
    while half > 1e-7 {
        let step = 2.0 * half / (per_axis - 1) as f64;
        let mut idx = vec![0usize; dims];
        let mut best_point = center.clone();
        loop {
            let y: Vec<f64> = (0..dims)
                .map(|i| center[i] - half + step * idx[i] as f64)
                .collect();
            let v = value(&y);
            if v < best {
                best = v;
                best_point = y;
            }
            let mut axis = 0;
            while axis < dims {
                idx[axis] += 1;
                if idx[axis] < per_axis {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
            if axis == dims {
                break;
            }
        }
        center = best_point;
        half = 2.0 * step;
    }
    best
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
