//! Core numerics for bounding the hot-spots ratio of Neumann eigenfunctions.
//!
//! The crate computes, for each dimension `d`, the proven upper bound on
//! `max_D u / max_∂D u` for a Neumann eigenfunction `u` with eigenvalue below
//! the first Dirichlet eigenvalue, and provides desk-scale verification tools:
//!
//! * [`specfun`] — Bessel functions `J_ν`, their first positive zeros, and the
//!   first root of the radial Neumann condition on the unit ball.
//! * [`constants`] — dimension-dependent scalars: the eigenvalue-ratio constant
//!   `α_d`, unit-ball volume, and the Szegő–Weinberger coefficient.
//! * [`bound`] — the one-dimensional functional in rescaled time and its
//!   minimizer, yielding the hot-spots constant per dimension.
//! * [`grid`] — rasterized 2-D domains (masks, generators, text format).
//! * [`eigen`] — first Neumann/Dirichlet eigenpairs of the 5-point Laplacian
//!   and the interior/boundary maximum ratio report.
//! * [`heat`] — Dirichlet-heat survival probabilities by implicit time
//!   stepping, and the per-time inequality check they feed.
//! * [`mc`] — reflected and absorbed Brownian-motion estimators with a
//!   counter-based RNG (bit-reproducible for a fixed seed).
//!
//! The crate is `no_std`-compatible (requires `alloc`); the `std` feature
//! (default) only switches the float math from `libm` to the platform intrinsics.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bound;
pub mod constants;
pub mod eigen;
pub mod grid;
pub mod heat;
pub mod mc;
mod num;
pub mod specfun;

use alloc::string::String;
use core::fmt;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    Domain(String),
    /// Input outside the numerically supported range of an operation.
    Range(String),
    /// An iterative method failed to converge or to bracket a root.
    Numerical(String),
    /// A grid domain or mask file failed validation.
    Validation(String),
}

impl Error {
    /// Stable machine-readable tag for the error category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Range(_) => "range",
            Error::Numerical(_) => "numerical",
            Error::Validation(_) => "validation",
        }
    }

    /// True for the categories caused by bad input rather than a failed computation.
    pub fn is_invalid_input(&self) -> bool {
        !matches!(self, Error::Numerical(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
