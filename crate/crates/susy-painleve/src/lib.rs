//! SUSY partner potentials of the harmonic and radial oscillators, and the
//! Painleve IV / Painleve V solutions they induce.
//!
//! The crate builds k-th order partner potentials from (possibly complex)
//! Schrodinger seed solutions, evaluates the induced Painleve functions with
//! their exact parameter families, and certifies everything numerically:
//! ODE residuals with analytic derivatives, discretized spectra, and
//! closed-form cross-checks. Nothing is trusted until it survives its
//! residual check.

pub mod ders;
pub mod error;
pub mod grid;
pub mod hierarchies;
mod linalg;
pub mod oscillators;
pub mod painleve_iv;
pub mod painleve_v;
pub mod report;
pub mod specfun;
pub mod spectral;
pub mod susy;

/// Complex scalar used throughout: `f64` components.
pub type C64 = num_complex::Complex64;

pub use error::{Error, Result};
