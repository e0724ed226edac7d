//! Bound states of the one-dimensional singular harmonic oscillator
//!
//! ```text
//! V(x) = ½ m ω² x² + ħ² α / (2 m x²)
//! ```
//!
//! on the half-line and on the whole line, together with independent
//! numerical checks of every closed-form result.
//!
//! - [`specfun`]: gamma, Kummer M, Laguerre and Hermite polynomials.
//! - [`model`]: parameters, indicial exponents, admissibility, boundary behaviour.
//! - [`spectrum`]: closed-form energies and eigenfunctions, degeneracy, perturbation diagnostics.
//! - [`quad`]: adaptive and Gauss quadrature, principal values, overlaps.
//! - [`oracle`]: finite-difference and shooting eigensolvers.
//! - [`cli`]: the command implementations behind the `singosc` binary.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod spectrum;
pub mod tridiag;

pub use error::{Error, Result};
pub use model::{BetaBranch, OscillatorSpec};
pub use spectrum::{Domain, EigenState, Parity, SpectrumTable};
