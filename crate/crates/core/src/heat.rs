//! Dirichlet-heat survival probabilities and the per-time inequality check.
//!
//! `heat_survival` evolves a unit point mass with absorbing walls by implicit
//! Euler and integrates what is left at time `t`: the survival probability
//! `∫_D p_t(x₀, y) dy` of Brownian motion started at `x₀`. Implicit stepping
//! is unconditionally stable and substochastic, so the survival estimate
//! stays in `[0, 1]` and decreases in `t`; accuracy is controlled by running
//! the same horizon at half the step and reporting the difference.

use crate::eigen::{self, EigenKind, Operator};
use crate::grid::{Cell, GridDomain};
use crate::{num, Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Base number of implicit Euler steps per horizon (doubled for the
/// step-halving error estimate).
const BASE_STEPS: usize = 512;
/// Relative CG tolerance of each implicit step.
const STEP_TOL: f64 = 1e-11;
/// Slack tolerance absorbing spatial discretization error in the
/// inequality check.
pub const LEMMA1_PDE_TOL: f64 = 5e-3;

/// How a survival probability was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurvivalMethod {
    Pde,
    ClosedForm,
    MonteCarlo,
}

/// `∫_D p_t(x₀, y) dy` with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalEstimate {
    pub x0: Cell,
    pub t: f64,
    pub survival: f64,
    pub method: SurvivalMethod,
    pub error_estimate: f64,
}

/// One row of the inequality check
/// `1 ≤ e^{μt} S + e^{μt}(1−S) · ‖u‖_{L∞(∂D)}/‖u‖_{L∞(D)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma1Report {
    pub t: f64,
    /// Survival probability `S` used on the right-hand side.
    pub survival: f64,
    pub rhs: f64,
    /// `rhs − 1`; nonnegative in the continuum.
    pub slack: f64,
    /// How negative the slack may go before the check fails.
    pub slack_tolerance: f64,
}

impl Lemma1Report {
    pub fn passes(&self) -> bool {
        self.slack >= -self.slack_tolerance
    }
}

/// Survival probability by implicit Euler on the Dirichlet heat equation.
///
/// The initial state carries mass `1/h²` at `x0`; each step solves
/// `(I + Δt A) u⁺ = u` by conjugate gradients warm-started from `u`.
pub fn heat_survival(dom: &GridDomain, x0: Cell, t: f64) -> Result<SurvivalEstimate> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    let x0_dense = dom
        .dense_index(x0.ix, x0.iy)
        .ok_or_else(|| Error::Domain(format!("x0 = ({}, {}) is not an interior cell", x0.ix, x0.iy)))?;
    let op = Operator::new(dom, EigenKind::Dirichlet);
    let coarse = survive(&op, dom, x0_dense, t, BASE_STEPS)?;
    let fine = survive(&op, dom, x0_dense, t, 2 * BASE_STEPS)?;
    Ok(SurvivalEstimate {
        x0,
        t,
        survival: fine,
        method: SurvivalMethod::Pde,
        error_estimate: num::abs(fine - coarse),
    })
}

fn survive(op: &Operator, dom: &GridDomain, x0: usize, t: f64, steps: usize) -> Result<f64> {
    let n = op.len();
    let dt = t / steps as f64;
    let h_sq = dom.h() * dom.h();
    let mut u = vec![0.0; n];
    u[x0] = 1.0 / h_sq;
    let mut z = u.clone();
    let mut scratch = Scratch::new(n);
    for _ in 0..steps {
        // z (warm start) holds the previous solution, a good initial guess.
        let converged = cg_shifted(op, dt, &u, &mut z, STEP_TOL, &mut scratch);
        if !converged {
            return Err(Error::Numerical(format!(
                "implicit heat step did not converge (dt = {dt:.3e}, {n} cells)"
            )));
        }
        u.copy_from_slice(&z);
    }
    let mass: f64 = u.iter().sum::<f64>() * h_sq;
    // Substochastic stepping keeps mass in [0,1]; trim solver roundoff.
    Ok(mass.clamp(0.0, 1.0))
}

struct Scratch {
    r: Vec<f64>,
    p: Vec<f64>,
    ap: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            r: vec![0.0; n],
            p: vec![0.0; n],
            ap: vec![0.0; n],
        }
    }
}

/// CG for `(I + dt·A) x = b`, warm-started from the value in `x`.
fn cg_shifted(
    op: &Operator,
    dt: f64,
    b: &[f64],
    x: &mut [f64],
    rel_tol: f64,
    s: &mut Scratch,
) -> bool {
    let n = b.len();
    let apply = |v: &[f64], out: &mut [f64]| {
        op.apply(v, out);
        for i in 0..n {
            out[i] = v[i] + dt * out[i];
        }
    };
    apply(x, &mut s.ap);
    for i in 0..n {
        s.r[i] = b[i] - s.ap[i];
    }
    s.p.copy_from_slice(&s.r);
    let mut rs: f64 = s.r.iter().map(|v| v * v).sum();
    let b_norm = num::sqrt(b.iter().map(|v| v * v).sum::<f64>()).max(f64::MIN_POSITIVE);
    let target = rel_tol * b_norm;
    for _ in 0..10 * n + 200 {
        if num::sqrt(rs) <= target {
            return true;
        }
        apply(&s.p, &mut s.ap);
        let pap: f64 = s.p.iter().zip(&s.ap).map(|(a, b)| a * b).sum();
        if pap <= 0.0 {
            return false;
        }
        let alpha = rs / pap;
        for i in 0..n {
            x[i] += alpha * s.p[i];
            s.r[i] -= alpha * s.ap[i];
        }
        let rs_new: f64 = s.r.iter().map(|v| v * v).sum();
        let beta = rs_new / rs;
        for i in 0..n {
            s.p[i] = s.r[i] + beta * s.p[i];
        }
        rs = rs_new;
    }
    num::sqrt(rs) <= target
}

/// Closed-form survival from the center of an `a × b` rectangle: the product
/// of two one-dimensional odd-sine series.
pub fn rectangle_center_survival(a: f64, b: f64, t: f64) -> SurvivalEstimate {
    let s = one_dim_center_survival(t, a) * one_dim_center_survival(t, b);
    SurvivalEstimate {
        x0: Cell { ix: 0, iy: 0 },
        t,
        survival: s.clamp(0.0, 1.0),
        method: SurvivalMethod::ClosedForm,
        error_estimate: 1e-15,
    }
}

fn one_dim_center_survival(t: f64, length: f64) -> f64 {
    let pi = core::f64::consts::PI;
    let mut sum = 0.0;
    let mut n = 1u32;
    let mut sign = 1.0;
    loop {
        let nf = n as f64;
        let term = 4.0 / (nf * pi) * sign * num::exp(-nf * nf * pi * pi * t / (length * length));
        sum += term;
        if num::abs(term) < 1e-17 || n > 2001 {
            return sum;
        }
        n += 2;
        sign = -sign;
    }
}

/// Check the boundary-coupling inequality on a grid of times.
///
/// `x₀` is the argmax cell of the computed Neumann eigenfunction (ties broken
/// by lowest row-major index); `S` comes from the PDE survival solver.
pub fn lemma1_check(dom: &GridDomain, t_grid: &[f64]) -> Result<Vec<Lemma1Report>> {
    let neumann = eigen::neumann_eigenpair(dom)?;
    let x0 = eigen::argmax_cell(dom, &neumann.field);
    let (interior_max, boundary_max) = eigen::split_maxima(dom, &neumann.field);
    let sup = interior_max.max(boundary_max);
    if !(sup > 0.0) {
        return Err(Error::Numerical(
            "Neumann eigenfunction has a nonpositive maximum".into(),
        ));
    }
    let boundary_over_sup = boundary_max / sup;
    let mu1 = neumann.eigenvalue;

    let mut reports = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let s = heat_survival(dom, x0, t)?.survival;
        let growth = num::exp(mu1 * t);
        let rhs = growth * s + growth * (1.0 - s) * boundary_over_sup;
        reports.push(Lemma1Report {
            t,
            survival: s,
            rhs,
            slack: rhs - 1.0,
            slack_tolerance: LEMMA1_PDE_TOL,
        });
    }
    Ok(reports)
}
