//! Bessel function evaluation and the two root families behind every
//! dimension constant: the first positive zero `j_{ν,1}` of `J_ν` and the
//! first positive root `p_{d/2,1}` of the derivative of `x^{1-d/2} J_{d/2}(x)`.

mod bessel;
mod gamma;
mod roots;

pub use bessel::bessel_j;
pub use gamma::log_gamma;
pub use roots::{first_bessel_zero, neumann_ball_root};

use crate::{Error, Result};
use alloc::format;

/// Validated nonnegative real order of a Bessel function `J_ν`.
///
/// The orders that actually drive the dimension constants are `d/2 - 1` and
/// `d/2` for integer `d ≥ 2`, but any finite `ν ≥ 0` is accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::Domain(format!(
                "Bessel order must be finite and nonnegative, got {nu}"
            )));
        }
        Ok(BesselOrder(nu))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A bracketed root of a scalar function, with the residual at the root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    /// The computed root.
    pub value: f64,
    /// Lower end of the bracket the search started from.
    pub bracket_lo: f64,
    /// Upper end of that bracket.
    pub bracket_hi: f64,
    /// Normalized function value at `value`.
    pub residual: f64,
    /// Function evaluations spent on refinement.
    pub iterations: u32,
}
