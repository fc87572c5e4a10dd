use nalgebra::{DMatrix, Matrix3};
use rand::Rng;
use serde::Serialize;

use crate::geom::{basis_u_r21, basis_uv_r22};
use crate::scalar::Real;

use super::random::rng;

/// Relative singular-value threshold for numerical rank.
pub const RANK_TOL: f64 = 1e-8;

/// Determinant of `[u''(τ) | -u'(τ) | u(τ)]`, the matrix taking
/// `(f, f', f'')` to the ℝ^{2,1} curve point.
pub fn jacobian_det_r21<T: Real>(tau: T) -> T {
    let u = basis_u_r21(tau, 2);
    let col = |k: usize| -> [T; 3] { std::array::from_fn(|i| u.component(i).deriv(k)) };
    let (a, b, c) = (col(2), col(1).map(|x| -x), col(0));
    a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) + c[0] * (a[1] * b[2] - a[2] * b[1])
}

/// Same determinant through nalgebra, for cross-checking.
pub fn jacobian_matrix_r21(tau: f64) -> Matrix3<f64> {
    let u = basis_u_r21(tau, 2);
    Matrix3::from_fn(|i, j| match j {
        0 => u.component(i).deriv(2),
        1 => -u.component(i).deriv(1),
        _ => u.component(i).deriv(0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankSpace {
    R21,
    R2n(usize),
    R22,
}

impl RankSpace {
    pub fn label(&self) -> String {
        match self {
            RankSpace::R21 => "r21".into(),
            RankSpace::R2n(n) => format!("r2n({n})"),
            RankSpace::R22 => "r22".into(),
        }
    }

    /// Curve dimension `n + 2`.
    pub fn dim(&self) -> usize {
        match self {
            RankSpace::R21 => 3,
            RankSpace::R2n(n) => n + 2,
            RankSpace::R22 => 4,
        }
    }

    /// Number of flat outputs and the highest jet entry the map reads.
    fn outputs(&self) -> (usize, usize) {
        match self {
            RankSpace::R21 => (1, 2),
            RankSpace::R2n(n) => ((*n).max(1), 2),
            RankSpace::R22 => (2, 1),
        }
    }

    /// Length of the variable vector `[s, y₁⁽⁰⁾, y₁⁽¹⁾, …]`.
    pub fn var_count(&self) -> usize {
        let (outputs, top) = self.outputs();
        1 + outputs * (top + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub space: String,
    pub tau: f64,
    pub depth: usize,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub threshold: f64,
}

/// Curve point as a function of `vars = [s, jet of y₁, jet of y₂, …]`, each
/// jet holding entries of order `0..=top`.
///
/// For ℝ^{2,n} the first output is `f` and the rest are the extra
/// coordinates; Δ is recomputed from their first derivatives.
pub fn evaluation_map(space: RankSpace, vars: &[f64]) -> Vec<f64> {
    let s = vars[0];
    match space {
        RankSpace::R21 | RankSpace::R2n(_) => {
            let u = basis_u_r21(s, 2);
            let ud = |i: usize, k: usize| u.component(i).deriv(k);
            let f = &vars[1..4];
            let extras: Vec<&[f64]> = vars[4..].chunks(3).collect();
            let delta = extras.iter().map(|e| e[1] * e[1]).sum::<f64>().sqrt();
            let mut x: Vec<f64> = (0..3)
                .map(|i| ud(i, 0) * f[2] - ud(i, 1) * f[1] + ud(i, 2) * f[0] + 0.5 * ud(i, 0) * delta)
                .collect();
            x.extend(extras.iter().map(|e| e[0]));
            x
        }
        RankSpace::R22 => {
            let (u, v) = basis_uv_r22(s, 1);
            let (f, g) = (&vars[1..3], &vars[3..5]);
            (0..4)
                .map(|i| {
                    let (ui, vi) = (u.component(i), v.component(i));
                    ui.deriv(0) * f[1] - ui.deriv(1) * f[0] + vi.deriv(0) * g[1] - vi.deriv(1) * g[0]
                })
                .collect()
        }
    }
}

/// Indices of the variables that are free at `depth`: `s` and every jet
/// entry of order at most `depth`.
fn free_variables(space: RankSpace, depth: usize) -> Vec<usize> {
    let (outputs, top) = space.outputs();
    let mut free = vec![0];
    for o in 0..outputs {
        for k in 0..=top.min(depth) {
            free.push(1 + o * (top + 1) + k);
        }
    }
    free
}

/// Numerical rank of the Jacobian of [`evaluation_map`] with respect to the
/// free variables at `depth`, the remaining ones held at `vars`.
///
/// Columns come from five-point central differences.
pub fn rank_check_at(space: RankSpace, vars: &[f64], depth: usize) -> RankReport {
    let free = free_variables(space, depth);
    let rows = space.dim();
    let mut jac = DMatrix::<f64>::zeros(rows, free.len());
    for (col, &j) in free.iter().enumerate() {
        let h = 1e-3 * vars[j].abs().max(1.0);
        let shifted = |d: f64| {
            let mut v = vars.to_vec();
            v[j] += d;
            evaluation_map(space, &v)
        };
        let (p1, p2, m1, m2) = (shifted(h), shifted(2.0 * h), shifted(-h), shifted(-2.0 * h));
        for i in 0..rows {
            jac[(i, col)] = (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h);
        }
    }
    let singular_values: Vec<f64> = jac.singular_values().iter().copied().collect();
    let largest = singular_values.iter().copied().fold(0.0, f64::max);
    let threshold = RANK_TOL * largest;
    let rank = singular_values.iter().filter(|&&s| s > threshold).count();
    RankReport {
        space: space.label(),
        tau: vars[0],
        depth,
        rank,
        singular_values,
        threshold,
    }
}

/// [`rank_check_at`] at `s = tau` with jet entries drawn from a generator
/// seeded by `seed`; extra-coordinate slopes are kept away from zero.
pub fn rank_check(space: RankSpace, tau: f64, depth: usize, seed: u64) -> RankReport {
    let mut r = rng(seed);
    let mut vars: Vec<f64> = (0..space.var_count()).map(|_| r.random_range(-2.0..2.0)).collect();
    vars[0] = tau;
    if let RankSpace::R2n(_) = space {
        for slope in vars[4..].iter_mut().skip(1).step_by(3) {
            *slope = slope.signum() * (0.5 + slope.abs());
        }
    }
    rank_check_at(space, &vars, depth)
}
