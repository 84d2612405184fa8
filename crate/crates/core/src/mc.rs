//! Brownian-motion cross-checks: reflected walks on rectangles (exact
//! coordinate folding, no discretization bias) and absorbed walks on mask
//! domains (Euler-Maruyama with absorption on the first step landing
//! outside).
//!
//! All randomness is counter-derived: every Gaussian increment is a pure
//! function of `(seed, path, step, component)`, so estimates are bit-identical
//! for a fixed seed regardless of how the work would be scheduled, and a
//! path's prefix is unchanged when the horizon is extended.

use crate::eigen;
use crate::grid::{Cell, GridDomain};
use crate::heat::{Lemma1Report, LEMMA1_PDE_TOL};
use crate::{num, Error, Result};
use alloc::format;

/// Path count, step size, seed, and horizon of one estimator run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    pub n_paths: u64,
    pub dt: f64,
    pub seed: u64,
    /// Time horizon.
    pub t: f64,
}

impl WalkConfig {
    fn validate(&self) -> Result<()> {
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(Error::Domain(format!("dt must be positive, got {}", self.dt)));
        }
        if !self.t.is_finite() || self.t <= 0.0 {
            return Err(Error::Domain(format!("t must be positive, got {}", self.t)));
        }
        if self.n_paths == 0 {
            return Err(Error::Domain("n_paths must be at least 1".into()));
        }
        Ok(())
    }

    /// Stricter gate for estimates that get reported: enough paths for the
    /// standard error to mean something and a step well below the horizon.
    pub fn validate_for_report(&self) -> Result<()> {
        self.validate()?;
        if self.n_paths < 1000 {
            return Err(Error::Domain(format!(
                "reported estimates need n_paths >= 1000, got {}",
                self.n_paths
            )));
        }
        if self.dt > self.t / 16.0 {
            return Err(Error::Domain(format!(
                "reported estimates need dt <= t/16, got dt = {} at t = {}",
                self.dt, self.t
            )));
        }
        Ok(())
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by `√n_paths`.
    pub std_error: f64,
    pub n_effective: u64,
}

/// Result of the Monte-Carlo inequality check, with the noise-aware tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McLemma1 {
    pub report: Lemma1Report,
    /// The absorbed-survival estimate behind the report.
    pub survival: McEstimate,
    pub mu1: f64,
    /// Argmax cell of the Neumann eigenfunction the walks started from.
    pub x0: Cell,
}

fn splitmix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Counter-based generator: a pure mix of `(seed, path, step, component)`.
pub(crate) fn mix64(seed: u64, path: u64, step: u64, component: u64) -> u64 {
    let mut z = seed ^ 0x6a09e667f3bcc909;
    z = splitmix(z.wrapping_add(path.wrapping_mul(0x9e3779b97f4a7c15)));
    z = splitmix(z.wrapping_add(step.wrapping_mul(0xbf58476d1ce4e5b9)));
    z = splitmix(z.wrapping_add(component.wrapping_mul(0x94d049bb133111eb)));
    z
}

/// One standard-Gaussian pair per (path, step): Box-Muller over the two
/// 32-bit lanes of a single counter draw. The radial uniform lives in
/// (0, 1] so `ln` is safe; its 2^-32 granularity truncates the Gaussian
/// tail at ~6.7σ, far below anything the estimators can resolve.
fn gauss_pair(seed: u64, path: u64, step: u64) -> (f64, f64) {
    let z = mix64(seed, path, step, 0);
    let u1 = ((z >> 32) as f64 + 1.0) / 4294967296.0;
    let u2 = (z as u32) as f64 / 4294967296.0;
    let r = num::sqrt(-2.0 * num::ln(u1));
    let (sin_t, cos_t) = num::sin_cos(2.0 * core::f64::consts::PI * u2);
    (r * cos_t, r * sin_t)
}

/// Increment scale for one step of length `dt`.
///
/// The heat equation here is `u_t = Δu` (no 1/2), so the matching diffusion
/// carries variance `2·dt` per coordinate per step.
#[inline]
fn increment_scale(dt: f64) -> f64 {
    num::sqrt(2.0 * dt)
}

/// Reflection of the line onto `[0, length]`.
fn fold(x: f64, length: f64) -> f64 {
    let period = 2.0 * length;
    let mut y = x - period * num::floor(x / period);
    if y > length {
        y = period - y;
    }
    y
}

/// Full-step schedule: `dt`-sized steps plus one final partial step, so a
/// shorter horizon shares the step prefix of a longer one.
#[derive(Clone, Copy)]
struct StepSchedule {
    n_full: u64,
    full_scale: f64,
    tail_scale: f64,
    count: u64,
}

impl StepSchedule {
    fn new(t: f64, dt: f64) -> Self {
        let n_full = num::floor(t / dt + 1e-12) as u64;
        let tail = t - n_full as f64 * dt;
        let has_tail = tail > 1e-15 * t;
        StepSchedule {
            n_full,
            full_scale: increment_scale(dt),
            tail_scale: if has_tail { increment_scale(tail) } else { 0.0 },
            count: n_full + has_tail as u64,
        }
    }

    #[inline(always)]
    fn scale(&self, step: u64) -> f64 {
        if step < self.n_full {
            self.full_scale
        } else {
            self.tail_scale
        }
    }
}

fn summarize(sum: f64, sum_sq: f64, n: u64) -> McEstimate {
    let nf = n as f64;
    let mean = sum / nf;
    let var = if n > 1 {
        ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    McEstimate {
        mean,
        std_error: num::sqrt(var / nf),
        n_effective: n,
    }
}

/// Mean of `u(ω(t))` for `u(x, y) = cos(πx/a)` under Brownian motion
/// reflected into the rectangle `(0,a) × (0,b)`, started at `x0`.
///
/// Folding a free Brownian path is pathwise equal in law to the reflected
/// process, so the only error is Monte-Carlo noise; the expected value is
/// `exp(−(π/a)² t) · cos(πx₀/a)`.
pub fn reflected_expectation_rectangle(
    a: f64,
    b: f64,
    x0: (f64, f64),
    cfg: &WalkConfig,
) -> Result<McEstimate> {
    cfg.validate()?;
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("rectangle sides must be positive, got {a} x {b}")));
    }
    if !(x0.0 > 0.0 && x0.0 < a && x0.1 > 0.0 && x0.1 < b) {
        return Err(Error::Domain(format!(
            "start point ({}, {}) must lie strictly inside (0,{a}) x (0,{b})",
            x0.0, x0.1
        )));
    }
    let pi_over_a = core::f64::consts::PI / a;
    let schedule = StepSchedule::new(cfg.t, cfg.dt);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for path in 0..cfg.n_paths {
        let (mut x, mut y) = x0;
        for step in 0..schedule.count {
            let (g1, g2) = gauss_pair(cfg.seed, path, step);
            let scale = schedule.scale(step);
            x = fold(x + scale * g1, a);
            y = fold(y + scale * g2, b);
        }
        let value = num::cos(pi_over_a * x);
        sum += value;
        sum_sq += value * value;
    }
    Ok(summarize(sum, sum_sq, cfg.n_paths))
}

/// Padded copy of the mask for branch-light lookups in the step loop; a live
/// position is never more than one step (a few cells) outside the mask box,
/// so the padding ring plus a range check covers every reachable index.
struct PaddedMask {
    cells: alloc::vec::Vec<bool>,
    px: i64,
    py: i64,
}

const PAD: i64 = 8;
// Adding 4096 before the truncating cast turns it into a floor for any
// coordinate the walk can reach.
const FLOOR_OFFSET: f64 = 4096.0;

impl PaddedMask {
    fn new(dom: &GridDomain) -> Self {
        let (nx, ny) = dom.mask_dims();
        let (px, py) = (nx as i64 + 2 * PAD, ny as i64 + 2 * PAD);
        let mut cells = alloc::vec![false; (px * py) as usize];
        for iy in 0..ny {
            for ix in 0..nx {
                cells[((iy as i64 + PAD) * px + ix as i64 + PAD) as usize] =
                    dom.is_inside(ix as isize, iy as isize);
            }
        }
        PaddedMask { cells, px, py }
    }

    #[inline(always)]
    fn inside(&self, x: f64, y: f64, inv_h: f64) -> bool {
        let jx = (x * inv_h + FLOOR_OFFSET) as i64 - 4096 + PAD;
        let jy = (y * inv_h + FLOOR_OFFSET) as i64 - 4096 + PAD;
        jx >= 0 && jy >= 0 && jx < self.px && jy < self.py && self.cells[(jy * self.px + jx) as usize]
    }
}

/// Fraction of paths started at the center of `x0` that never land in an
/// outside cell up to the horizon — an estimate of `∫_D p_t(x₀, y) dy`.
///
/// Sub-step boundary excursions are invisible to the scheme, so the estimate
/// is biased upward by `O(√dt)`; `dt ≈ h²/10` keeps that below test
/// tolerances.
pub fn absorbed_survival(dom: &GridDomain, x0: Cell, cfg: &WalkConfig) -> Result<McEstimate> {
    cfg.validate()?;
    dom.dense_index(x0.ix, x0.iy)
        .ok_or_else(|| Error::Domain(format!("x0 = ({}, {}) is not an interior cell", x0.ix, x0.iy)))?;
    let (sx, sy) = dom.center(x0);
    let inv_h = 1.0 / dom.h();
    let schedule = StepSchedule::new(cfg.t, cfg.dt);
    let mask = PaddedMask::new(dom);

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for path in 0..cfg.n_paths {
        let (mut x, mut y) = (sx, sy);
        let mut alive = true;
        for step in 0..schedule.count {
            let (g1, g2) = gauss_pair(cfg.seed, path, step);
            let scale = schedule.scale(step);
            x += scale * g1;
            y += scale * g2;
            if !mask.inside(x, y, inv_h) {
                alive = false;
                break;
            }
        }
        let value = if alive { 1.0 } else { 0.0 };
        sum += value;
        sum_sq += value;
    }
    Ok(summarize(sum, sum_sq, cfg.n_paths))
}

/// Absorbed-survival estimates at several horizons from one path sweep.
///
/// Because increments are counter-derived, a path's prefix does not depend on
/// the horizon, so each returned estimate is bit-identical to calling
/// [`absorbed_survival`] at that horizon — the sweep just shares the work.
/// Every horizon must lie on the step grid (an integer multiple of `cfg.dt`).
pub fn absorbed_survival_profile(
    dom: &GridDomain,
    x0: Cell,
    cfg: &WalkConfig,
    horizons: &[f64],
) -> Result<alloc::vec::Vec<McEstimate>> {
    if horizons.is_empty() {
        return Ok(alloc::vec::Vec::new());
    }
    let mut steps_of = alloc::vec::Vec::with_capacity(horizons.len());
    let mut max_steps = 0u64;
    for &t in horizons {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::Domain(format!("horizons must be positive, got {t}")));
        }
        let ratio = t / cfg.dt;
        let n = num::round(ratio) as u64;
        if n == 0 || num::abs(ratio - n as f64) > 1e-9 * ratio.max(1.0) {
            return Err(Error::Domain(format!(
                "horizon {t} is not a multiple of dt = {}",
                cfg.dt
            )));
        }
        steps_of.push(n);
        max_steps = max_steps.max(n);
    }
    let cfg = WalkConfig {
        t: max_steps as f64 * cfg.dt,
        ..*cfg
    };
    cfg.validate()?;
    dom.dense_index(x0.ix, x0.iy)
        .ok_or_else(|| Error::Domain(format!("x0 = ({}, {}) is not an interior cell", x0.ix, x0.iy)))?;
    let (sx, sy) = dom.center(x0);
    let inv_h = 1.0 / dom.h();
    let scale = increment_scale(cfg.dt);
    let mask = PaddedMask::new(dom);

    let mut alive_counts = alloc::vec![0u64; horizons.len()];
    for path in 0..cfg.n_paths {
        let (mut x, mut y) = (sx, sy);
        // Number of steps survived before absorption (max_steps if never).
        let mut survived = max_steps;
        for step in 0..max_steps {
            let (g1, g2) = gauss_pair(cfg.seed, path, step);
            x += scale * g1;
            y += scale * g2;
            if !mask.inside(x, y, inv_h) {
                survived = step;
                break;
            }
        }
        for (count, &n) in alive_counts.iter_mut().zip(&steps_of) {
            if survived >= n {
                *count += 1;
            }
        }
    }
    Ok(alive_counts
        .iter()
        .map(|&alive| {
            let sum = alive as f64;
            summarize(sum, sum, cfg.n_paths)
        })
        .collect())
}

/// Monte-Carlo version of the inequality check: absorbed survival supplies
/// `S`, the Neumann eigenpair supplies `μ₁`, `x₀`, and the boundary ratio.
/// The slack tolerance widens by `3σ e^{μ₁ t}` to absorb sampling noise.
pub fn lemma1_mc(dom: &GridDomain, t: f64, cfg: &WalkConfig) -> Result<McLemma1> {
    let cfg = WalkConfig { t, ..*cfg };
    cfg.validate()?;
    let neumann = eigen::neumann_eigenpair(dom)?;
    let x0 = eigen::argmax_cell(dom, &neumann.field);
    let (interior_max, boundary_max) = eigen::split_maxima(dom, &neumann.field);
    let sup = interior_max.max(boundary_max);
    let boundary_over_sup = boundary_max / sup;
    let survival = absorbed_survival(dom, x0, &cfg)?;

    let mu1 = neumann.eigenvalue;
    let growth = num::exp(mu1 * t);
    let s = survival.mean;
    let rhs = growth * s + growth * (1.0 - s) * boundary_over_sup;
    let report = Lemma1Report {
        t,
        survival: s,
        rhs,
        slack: rhs - 1.0,
        slack_tolerance: 3.0 * survival.std_error * growth + LEMMA1_PDE_TOL,
    };
    Ok(McLemma1 {
        report,
        survival,
        mu1,
        x0,
    })
}
