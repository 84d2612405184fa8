//! First positive roots of `J_ν` and of the radial Neumann condition.

use super::bessel;
use super::{BesselOrder, RootResult};
use crate::num;
use crate::{Error, Result};
use alloc::format;

const SCAN_STEP: f64 = 0.1;

/// Strict sign change; products would underflow for subnormal-scale values.
#[inline]
fn opposite_signs(a: f64, b: f64) -> bool {
    (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)
}

/// Smallest positive zero `j_{ν,1}` of `J_ν`.
///
/// The search scans from `√(ν(ν+2))` (a known lower bound; `0.1` for ν = 0)
/// in steps of `0.1` until the sign changes, then bisects.
pub fn first_bessel_zero(nu: BesselOrder) -> Result<RootResult> {
    let nu = nu.value();
    let f = |x: f64| bessel::eval(nu, x);

    let start = if nu > 0.0 {
        num::sqrt(nu * (nu + 2.0))
    } else {
        SCAN_STEP
    };
    let limit = 2.0 * (nu + 10.0);

    let (lo, hi, f_lo, f_hi, scan_evals) = scan_for_sign_change(&f, start, SCAN_STEP, limit)
        .ok_or_else(|| {
            Error::Numerical(format!(
                "no sign change of J_{nu} found scanning [{start}, {limit}]"
            ))
        })?;

    let refined = refine(&f, lo, hi, f_lo, f_hi);
    Ok(RootResult {
        value: refined.value,
        bracket_lo: lo,
        bracket_hi: hi,
        residual: clamp_unit_scale(refined.f_value, 1.0),
        iterations: scan_evals + refined.evals,
    })
}

/// Smallest positive root `p_{d/2,1}` of the derivative of `x^{1-d/2} J_{d/2}(x)`.
///
/// Via `J'_ν = J_{ν−1} − (ν/x) J_ν` the condition becomes
/// `g(x) = x J_{d/2−1}(x) − (d−1) J_{d/2}(x) = 0`, which avoids numerical
/// differentiation. The root is bracketed a priori by the Lorch–Szegő bounds
/// `d + 8/(d+6) < p² < d + 2`.
pub fn neumann_ball_root(d: u32) -> Result<RootResult> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
    }
    let half = d as f64 / 2.0;
    let dm1 = (d - 1) as f64;
    let g = |x: f64| x * bessel::eval(half - 1.0, x) - dm1 * bessel::eval(half, x);

    let lo = num::sqrt(d as f64 + 8.0 / (d as f64 + 6.0));
    let hi = num::sqrt(d as f64 + 2.0);
    let g_lo = g(lo);
    let g_hi = g(hi);
    if !opposite_signs(g_lo, g_hi) {
        return Err(Error::Numerical(format!(
            "no sign change inside the Lorch-Szego bracket ({lo}, {hi}) for d = {d}: \
             g({lo}) = {g_lo}, g({hi}) = {g_hi}"
        )));
    }

    let refined = refine(&g, lo, hi, g_lo, g_hi);
    // Scale-free residual: divide by the size of the leading term.
    let x = refined.value;
    let denom = num::abs(x * bessel::eval(half - 1.0, x));
    Ok(RootResult {
        value: x,
        bracket_lo: lo,
        bracket_hi: hi,
        residual: clamp_unit_scale(refined.f_value, denom),
        iterations: refined.evals + 2,
    })
}

fn clamp_unit_scale(f_value: f64, scale: f64) -> f64 {
    f_value / if scale > 1.0 { scale } else { 1.0 }
}

fn scan_for_sign_change(
    f: &dyn Fn(f64) -> f64,
    start: f64,
    step: f64,
    limit: f64,
) -> Option<(f64, f64, f64, f64, u32)> {
    let mut x_prev = start;
    let mut f_prev = f(start);
    let mut evals = 1;
    if f_prev == 0.0 {
        return Some((start - 0.5 * step, start + 0.5 * step, 1.0, -1.0, evals));
    }
    let mut x = start + step;
    while x <= limit {
        let fx = f(x);
        evals += 1;
        if fx == 0.0 {
            return Some((x - 0.5 * step, x + 0.5 * step, f_prev, -f_prev, evals));
        }
        if opposite_signs(f_prev, fx) {
            return Some((x_prev, x, f_prev, fx, evals));
        }
        x_prev = x;
        f_prev = fx;
        x += step;
    }
    None
}

struct Refined {
    value: f64,
    f_value: f64,
    evals: u32,
}

/// Bisection down to machine bracket width, then one secant polish.
fn refine(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64, mut f_hi: f64) -> Refined {
    debug_assert!(opposite_signs(f_lo, f_hi));
    let mut evals = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        evals += 1;
        if f_mid == 0.0 {
            return Refined { value: mid, f_value: 0.0, evals };
        }
        if opposite_signs(f_lo, f_mid) {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    // Secant step inside the final bracket.
    let secant = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    let (mut best, mut f_best) = if num::abs(f_lo) <= num::abs(f_hi) {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    if secant.is_finite() && secant >= lo && secant <= hi {
        let f_secant = f(secant);
        evals += 1;
        if num::abs(f_secant) < num::abs(f_best) {
            best = secant;
            f_best = f_secant;
        }
    }
    Refined { value: best, f_value: f_best, evals }
}
