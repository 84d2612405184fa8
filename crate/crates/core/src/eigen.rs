//! First Neumann/Dirichlet eigenpairs of the 5-point Laplacian on a
//! [`GridDomain`], and the interior/boundary maximum-ratio report.
//!
//! Discretization: cell-centered 5-point stencil. Neumann walls use mirrored
//! ghost cells (a missing neighbor contributes no flux), Dirichlet walls use
//! antisymmetric ghosts (`u_ghost = −u_c`), which places the zero condition
//! exactly on the cell face and keeps the eigenvalue error second order. Both
//! operators are symmetric, so the constant vector is an exact Neumann null
//! vector and eigenvalues are real.
//!
//! Solver: inverse power iteration with shift 0 (constant-mode deflation for
//! Neumann), inner solves by conjugate gradients with warm starts and an
//! inner tolerance tied to the current eigen-residual.

use crate::bound;
use crate::grid::{Cell, GridDomain};
use crate::{num, Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Relative operator residual at which an eigenpair is accepted.
const EIGEN_TOL: f64 = 1e-8;
/// Outer iteration cap.
const MAX_OUTER: usize = 10_000;
/// Inner CG iteration cap per solve.
const MAX_CG: usize = 50_000;

/// Boundary treatment of the discrete Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenKind {
    Neumann,
    Dirichlet,
}

/// A converged eigenpair on the dense cell ordering of its domain.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    /// `μ₁` (Neumann, first nontrivial) or `λ₁` (Dirichlet, smallest).
    pub eigenvalue: f64,
    /// Eigenvector over inside cells, unit Euclidean norm.
    /// Neumann: zero mean, sign-normalized so the maximum entry is positive.
    /// Dirichlet: positive everywhere (ground state).
    pub field: Vec<f64>,
    /// Relative operator residual `‖Av − λv‖ / λ` at acceptance.
    pub residual: f64,
    pub kind: EigenKind,
}

/// Interior/boundary maxima of the first Neumann eigenfunction versus the
/// proven planar bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HotSpotsReport {
    pub mu1: f64,
    pub lambda1: f64,
    /// Maximum of `u` over cells outside the discrete boundary layer.
    pub interior_max: f64,
    /// Maximum of `u` over the boundary layer.
    pub boundary_max: f64,
    /// `‖u‖_{L∞(D)} / ‖u‖_{L∞(∂D)}` in the discrete sense.
    pub ratio: f64,
    /// The planar hot-spots constant the ratio is checked against.
    pub bound: f64,
    pub mu_lt_lambda: bool,
    pub bound_satisfied: bool,
}

/// The negated 5-point Laplacian (positive semi-definite) on the dense cells.
pub(crate) struct Operator {
    n: usize,
    inv_h2: f64,
    /// Per cell: the four neighbor dense indices, `u32::MAX` when outside.
    nbr: Vec<[u32; 4]>,
    kind: EigenKind,
}

impl Operator {
    pub(crate) fn new(dom: &GridDomain, kind: EigenKind) -> Self {
        let cells = dom.cells();
        let mut nbr = Vec::with_capacity(cells.len());
        for &Cell { ix, iy } in cells {
            let mut row = [u32::MAX; 4];
            let deltas = [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)];
            for (slot, (dx, dy)) in row.iter_mut().zip(deltas) {
                let (jx, jy) = (ix as isize + dx, iy as isize + dy);
                if dom.is_inside(jx, jy) {
                    *slot = dom.dense_index(jx as usize, jy as usize).unwrap() as u32;
                }
            }
            nbr.push(row);
        }
        Operator {
            n: cells.len(),
            inv_h2: 1.0 / (dom.h() * dom.h()),
            nbr,
            kind,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.n
    }

    /// `out = A x` where `A = -Δ_h` with this operator's boundary treatment.
    ///
    /// A missing neighbor contributes nothing under Neumann (mirrored ghost)
    /// and `2·x_c` under Dirichlet (antisymmetric ghost), giving diagonals
    /// `degree` and `4 + missing` respectively.
    pub(crate) fn apply(&self, x: &[f64], out: &mut [f64]) {
        let dirichlet = self.kind == EigenKind::Dirichlet;
        for (i, row) in self.nbr.iter().enumerate() {
            let center = x[i];
            let mut acc = 0.0;
            let mut degree = 0.0;
            for &j in row {
                if j != u32::MAX {
                    acc += x[j as usize];
                    degree += 1.0;
                }
            }
            let diag = if dirichlet { 8.0 - degree } else { degree };
            out[i] = self.inv_h2 * (diag * center - acc);
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    num::sqrt(dot(a, a))
}

fn subtract_mean(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    for x in v.iter_mut() {
        *x -= mean;
    }
}

/// Conjugate gradients for `A x = b`, warm-started from the value in `x`.
/// When `deflate` is set, the computation is kept orthogonal to constants
/// so the singular Neumann system stays consistent.
fn cg_solve(op: &Operator, b: &[f64], x: &mut [f64], rel_tol: f64, deflate: bool) -> usize {
    let n = op.n;
    let mut r = vec![0.0; n];
    let mut ap = vec![0.0; n];
    op.apply(x, &mut ap);
    for i in 0..n {
        r[i] = b[i] - ap[i];
    }
    if deflate {
        subtract_mean(&mut r);
    }
    let mut p = r.clone();
    let mut rs = dot(&r, &r);
    let b_norm = norm(b).max(f64::MIN_POSITIVE);
    let target = rel_tol * b_norm;
    let mut iters = 0;
    while iters < MAX_CG && num::sqrt(rs) > target {
        op.apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            break;
        }
        let alpha = rs / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if deflate && iters % 32 == 31 {
            subtract_mean(&mut r);
        }
        let rs_new = dot(&r, &r);
        let beta = rs_new / rs;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rs = rs_new;
        iters += 1;
    }
    iters
}

/// Deterministic scrambled start vector (SplitMix64 mix of the index).
fn seed_vector(n: usize, salt: u64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let z = crate::mc::mix64(salt, i as u64, 0, 0);
            (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect()
}

fn smallest_eigenpair(op: &Operator, kind: EigenKind) -> Result<EigenPair> {
    let n = op.len();
    let deflate = kind == EigenKind::Neumann;
    let mut v = if deflate {
        seed_vector(n, 0x9e3779b97f4a7c15)
    } else {
        // A positive start keeps inverse iteration inside the Perron cone.
        vec![1.0; n]
    };
    if deflate {
        subtract_mean(&mut v);
    }
    let nv = norm(&v);
    for x in v.iter_mut() {
        *x /= nv;
    }

    let mut av = vec![0.0; n];
    let mut w = v.clone();
    let mut residual = f64::INFINITY;
    let mut rayleigh = 0.0;

    for _outer in 0..MAX_OUTER {
        op.apply(&v, &mut av);
        rayleigh = dot(&v, &av);
        let mut res_sq = 0.0;
        for i in 0..n {
            let d = av[i] - rayleigh * v[i];
            res_sq += d * d;
        }
        residual = num::sqrt(res_sq) / rayleigh.max(f64::MIN_POSITIVE);
        if residual <= EIGEN_TOL && rayleigh > 0.0 {
            return Ok(finalize(v, rayleigh, residual, kind));
        }
        // Inverse iteration step: solve A w = v, warm-started.
        let inner_tol = (0.1 * residual).clamp(1e-12, 0.05);
        cg_solve(op, &v, &mut w, inner_tol, deflate);
        if deflate {
            subtract_mean(&mut w);
        }
        let nw = norm(&w);
        if !(nw.is_finite() && nw > 0.0) {
            return Err(Error::Numerical(format!(
                "inverse iteration produced a degenerate vector (norm {nw})"
            )));
        }
        for i in 0..n {
            v[i] = w[i] / nw;
        }
        for i in 0..n {
            w[i] = v[i] / rayleigh.max(1e-300);
        }
    }
    Err(Error::Numerical(format!(
        "eigensolver did not reach residual {EIGEN_TOL:.0e} within {MAX_OUTER} iterations \
         (last residual {residual:.3e}, eigenvalue estimate {rayleigh:.6e})"
    )))
}

fn finalize(mut v: Vec<f64>, eigenvalue: f64, residual: f64, kind: EigenKind) -> EigenPair {
    match kind {
        EigenKind::Neumann => {
            subtract_mean(&mut v);
            let max = v.iter().cloned().fold(f64::MIN, f64::max);
            let min = v.iter().cloned().fold(f64::MAX, f64::min);
            if num::abs(min) > max {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
        }
        EigenKind::Dirichlet => {
            let sum: f64 = v.iter().sum();
            if sum < 0.0 {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    let nv = norm(&v);
    for x in v.iter_mut() {
        *x /= nv;
    }
    EigenPair {
        eigenvalue,
        field: v,
        residual,
        kind,
    }
}

/// First nontrivial eigenpair of the Neumann Laplacian on `dom`.
pub fn neumann_eigenpair(dom: &GridDomain) -> Result<EigenPair> {
    let op = Operator::new(dom, EigenKind::Neumann);
    smallest_eigenpair(&op, EigenKind::Neumann)
}

/// Smallest eigenpair of the Dirichlet Laplacian on `dom`.
pub fn dirichlet_eigenvalue(dom: &GridDomain) -> Result<EigenPair> {
    let op = Operator::new(dom, EigenKind::Dirichlet);
    smallest_eigenpair(&op, EigenKind::Dirichlet)
}

/// Compute both eigenpairs and compare the interior/boundary maximum ratio
/// of the Neumann eigenfunction against the planar hot-spots constant.
pub fn hot_spots_report(dom: &GridDomain) -> Result<HotSpotsReport> {
    let neumann = neumann_eigenpair(dom)?;
    let dirichlet = dirichlet_eigenvalue(dom)?;
    report_from_parts(dom, &neumann, dirichlet.eigenvalue)
}

pub(crate) fn report_from_parts(
    dom: &GridDomain,
    neumann: &EigenPair,
    lambda1: f64,
) -> Result<HotSpotsReport> {
    let (interior_max, boundary_max) = split_maxima(dom, &neumann.field);
    let sup = interior_max.max(boundary_max);
    let ratio = if boundary_max > 0.0 {
        sup / boundary_max
    } else {
        f64::INFINITY
    };
    let bound = bound::hot_spots_constant(2)?.constant_star;
    Ok(HotSpotsReport {
        mu1: neumann.eigenvalue,
        lambda1,
        interior_max,
        boundary_max,
        ratio,
        bound,
        mu_lt_lambda: neumann.eigenvalue < lambda1,
        bound_satisfied: ratio <= bound,
    })
}

/// Maxima of `u` over the non-boundary cells and over the boundary layer.
pub(crate) fn split_maxima(dom: &GridDomain, field: &[f64]) -> (f64, f64) {
    let mut interior_max = f64::MIN;
    let mut boundary_max = f64::MIN;
    for (i, &value) in field.iter().enumerate() {
        if dom.is_boundary(i) {
            boundary_max = boundary_max.max(value);
        } else {
            interior_max = interior_max.max(value);
        }
    }
    (interior_max, boundary_max)
}

/// Argmax cell of a field, ties broken by lowest row-major (dense) index.
pub fn argmax_cell(dom: &GridDomain, field: &[f64]) -> Cell {
    let mut best = 0;
    for (i, &v) in field.iter().enumerate() {
        if v > field[best] {
            best = i;
        }
    }
    dom.cells()[best]
}
