//! Error type shared by every module.

use crate::C64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("gamma pole at z = {0} (non-positive integer)")]
    GammaPole(C64),

    #[error("hypergeometric lower parameter b = {b} is a non-positive integer not cancelled by a")]
    ParameterPole { b: C64 },

    #[error("hypergeometric series did not converge within {terms} terms (a = {a}, b = {b}, y = {y})")]
    SeriesNoConvergence { a: C64, b: C64, y: C64, terms: usize },

    #[error("derivative order {order} exceeds the supported maximum {max}")]
    DerivativeOrder { order: usize, max: usize },

    #[error("argument outside the supported domain: {0}")]
    Domain(String),

    #[error("jet carries {have} derivative orders but {need} are required")]
    JetOrder { have: usize, need: usize },

    #[error("seed annihilated to zero at chain rung {rung}; the factorization energy sits on the ladder")]
    ZeroSeed { rung: usize },

    #[error("Wronskian numerically singular at x = {x}: |W| = {value:.3e} < {threshold:.3e}")]
    WronskianSingular { x: f64, value: f64, threshold: f64 },

    #[error("degenerate finite-difference denominator at x = {x}: alpha(eps_{i}) == alpha(eps_{j})")]
    DegenerateDenominator { x: f64, i: usize, j: usize },

    #[error("division by a zero leading value in derivative arithmetic")]
    ZeroDivision,

    #[error("validation rejected: {0}")]
    Rejected(String),

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("closed form for {0} is catalogued but gated (definition pending)")]
    GatedClosedForm(String),

    #[error("eigenvalue iteration failed to converge at index {0}")]
    EigenNoConvergence(usize),

    #[error("{0}")]
    Invalid(String),
}
