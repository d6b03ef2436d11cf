use thiserror::Error;

use crate::special::SpecialFnError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("Fock truncation at nmax = {nmax} keeps only {kept:.15} of the coherent-state norm")]
    TruncationInsufficient { nmax: usize, kept: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Special(#[from] SpecialFnError),

    #[error(
        "quadrature did not converge within {panels} panels (error estimate {estimate:e}, requested {requested:e})"
    )]
    QuadratureNonConvergence { panels: usize, estimate: f64, requested: f64 },

    #[error("integrator step size underflow at t = {t:e} s (h = {h:e} s)")]
    StepUnderflow { t: f64, h: f64 },

    #[error("integrator exceeded {steps} steps before t = {t:e} s")]
    StepBudget { steps: usize, t: f64 },

    #[error("overlaps are not normalised: <C|C> + <D|D> = {norm}")]
    NormDefect { norm: f64 },

    #[error("inconsistent overlaps: eigenvalue discriminant {discriminant} outside [0, 1]")]
    InconsistentOverlaps { discriminant: f64 },
}
