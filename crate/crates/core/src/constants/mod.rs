//! Dimension-dependent scalars feeding the bound optimization.
//!
//! For each dimension `d` these are the eigenvalue-ratio constant
//! `α_d = (p_{d/2,1} / j_{d/2−1,1})²` (the best constant in `μ₁ ≤ α_d λ₁`
//! coming from the Faber–Krahn and Szegő–Weinberger inequalities), the unit
//! ball volume `c_d`, and the dimensionless Szegő–Weinberger coefficient
//! `M_d = c_d^{2/d} p²_{d/2,1}` bounding `μ₁ |D|^{2/d}`.

mod quad;

use crate::specfun::{self, BesselOrder};
use crate::{num, Error, Result};
use alloc::format;

/// Highest supported dimension; beyond this the gamma-function magnitudes
/// stop being representable in the intermediate quantities we expose.
pub const MAX_DIMENSION: u32 = 500;

/// `2eπ`, the limit of `π/Γ(d/2+1)^{2/d} · (d+2)` as `d → ∞`.
const TWO_E_PI: f64 = 17.079468445347134;

/// All scalars of one dimension in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionConstants {
    pub d: u32,
    /// `p²_{d/2,1}`: square of the first root of the radial Neumann condition.
    pub p_sq: f64,
    /// `j_{d/2−1,1}`: first positive zero of `J_{d/2−1}`.
    pub j_first: f64,
    /// `(p/j)²`, the best eigenvalue-ratio constant; lies in (0, 1).
    pub alpha_d: f64,
    /// Volume `c_d` of the d-dimensional unit ball. Underflows f64 near
    /// d ≈ 460; everything downstream uses the log form instead.
    pub ball_volume: f64,
    /// `M_d = c_d^{2/d} · p²`, the dimensionless bound on `μ₁ |D|^{2/d}`.
    pub sw_coeff: f64,
    /// `min{0.587, (d+2)/((d/2 − 2/d)²)}`: a closed-form (weaker) bound on α_d.
    pub alpha_d_closed_form: f64,
}

fn check_dimension(d: u32, cap: u32) -> Result<()> {
    if !(2..=cap).contains(&d) {
        return Err(Error::Domain(format!(
            "dimension must be in [2, {cap}], got {d}"
        )));
    }
    Ok(())
}

/// `ln c_d` where `c_d = π^{d/2} / Γ(d/2 + 1)` is the unit-ball volume.
pub fn ball_volume_ln(d: u32) -> Result<f64> {
    check_dimension(d, MAX_DIMENSION)?;
    let half = d as f64 / 2.0;
    Ok(half * num::ln(core::f64::consts::PI) - specfun::log_gamma(half + 1.0)?)
}

/// Volume of the d-dimensional unit ball, `π^{d/2} / Γ(d/2 + 1)`.
pub fn ball_volume(d: u32) -> Result<f64> {
    Ok(num::exp(ball_volume_ln(d)?))
}

/// Assemble every constant for dimension `d` from freshly computed roots.
pub fn dimension_constants(d: u32) -> Result<DimensionConstants> {
    check_dimension(d, MAX_DIMENSION)?;
    let p = specfun::neumann_ball_root(d)?.value;
    let j = specfun::first_bessel_zero(BesselOrder::new(d as f64 / 2.0 - 1.0)?)?.value;
    let p_sq = p * p;
    let alpha_d = p_sq / (j * j);
    let ln_cd = ball_volume_ln(d)?;
    let sw_coeff = num::exp(2.0 / d as f64 * ln_cd) * p_sq;

    let closed_denom = d as f64 / 2.0 - 2.0 / d as f64;
    let alpha_d_closed_form = if closed_denom > 0.0 {
        let candidate = (d as f64 + 2.0) / (closed_denom * closed_denom);
        if candidate < 0.587 {
            candidate
        } else {
            0.587
        }
    } else {
        0.587
    };

    Ok(DimensionConstants {
        d,
        p_sq,
        j_first: j,
        alpha_d,
        ball_volume: num::exp(ln_cd),
        sw_coeff,
        alpha_d_closed_form,
    })
}

/// The limit `2eπ` of the dimensionless Szegő–Weinberger sequence.
pub fn sw_dimensionless_limit() -> f64 {
    TWO_E_PI
}

/// The sequence `π/Γ(d/2+1)^{2/d} · (d+2)` whose limit is `2eπ`.
pub fn sw_sequence_upper(d: u32) -> Result<f64> {
    check_dimension(d, MAX_DIMENSION)?;
    let half = d as f64 / 2.0;
    let g = specfun::log_gamma(half + 1.0)?;
    Ok(core::f64::consts::PI * num::exp(-g * 2.0 / d as f64) * (d as f64 + 2.0))
}

/// Rayleigh-quotient certificate for `p² ≤ d + 2`: evaluates
/// `∫_{-1}^{1} (1−x²)^{(d−1)/2} dx / ∫_{-1}^{1} (1−x²)^{(d−1)/2} x² dx`
/// by quadrature; the exact value is `d + 2` (a Beta-function identity).
///
/// The substitution `x = sin θ` removes the endpoint derivative singularity,
/// leaving `∫ cos^d θ dθ / ∫ sin²θ cos^d θ dθ` over `[-π/2, π/2]`.
pub fn rayleigh_upper_check(d: u32) -> Result<f64> {
    check_dimension(d, 200)?;
    let dd = d as f64;
    let numerator = |theta: f64| num::powf(num::cos(theta), dd);
    let denominator = |theta: f64| {
        let s = num::sin(theta);
        s * s * num::powf(num::cos(theta), dd)
    };

    let gl = quad::GaussLegendre::new(32);
    let half_pi = core::f64::consts::FRAC_PI_2;
    let mut prev: Option<f64> = None;
    let mut panels = 2;
    while panels <= 256 {
        let top = gl.integrate(&numerator, -half_pi, half_pi, panels);
        let bottom = gl.integrate(&denominator, -half_pi, half_pi, panels);
        if bottom <= 0.0 {
            return Err(Error::Numerical(format!(
                "degenerate quadrature denominator at d = {d}"
            )));
        }
        let ratio = top / bottom;
        if let Some(p) = prev {
            if num::abs(ratio - p) <= 1e-12 * num::abs(ratio) {
                return Ok(ratio);
            }
        }
        prev = Some(ratio);
        panels *= 2;
    }
    Err(Error::Numerical(format!(
        "quadrature for the Rayleigh check did not converge at d = {d}"
    )))
}
