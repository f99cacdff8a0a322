//! Wright-function kernels and solution operators for the time-fractional
//! even-order equation
//!
//! ```text
//! D^α_{0y} u − (−1)^{n−1} ∂^{2n}_x u = f,   1 < α < 2,
//! ```
//!
//! where `D^α_{0y}` is the Riemann–Liouville derivative in `y`.
//!
//! The crate is `no_std` (with `alloc`) and contains only pure numerics:
//!
//! * [`specfun`]: reciprocal gamma, Wright and generalized Wright series,
//!   a steepest-descent contour evaluator for large arguments, Fresnel
//!   integrals in the `(1/2√π)∫ sin t/√t` normalization, and `₁F₂`.
//! * [`selfsim`]: self-similar series solutions and their integer-order
//!   combinations.
//! * [`fundsol`]: the fundamental solution `Γ_b`, its exact derivative
//!   shifts, diagonal jumps and truncation radii.
//! * [`catalog`]: named data functions with analytic derivatives and growth
//!   certificates.
//! * [`cauchy`]: the convolution representation of the Cauchy problem,
//!   evaluated by nested adaptive Gauss–Kronrod quadrature over tabulated
//!   kernel [`profile`]s.
//!
//! File formats, the command line and the reference oracles live in the
//! companion crates.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod cauchy;
pub mod dd;
mod error;
pub mod fundsol;
pub mod gamma;
pub mod profile;
pub mod quad;
pub mod selfsim;
pub mod specfun;

pub use error::{Error, Result};

pub use num_complex::Complex64;
