use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension n = {n} is not supported (need n >= {min})")]
    InvalidDimension { n: usize, min: usize },

    #[error("expected {expected} chart angles, got {got}")]
    AngleCount { expected: usize, got: usize },

    #[error("non-finite chart coordinate")]
    NonFiniteChart,

    #[error("r = {r} lies outside the profile domain ({min}, {max})")]
    OutOfDomain { r: f64, min: f64, max: f64 },

    #[error("degenerate chart: |cos theta_{index}| = {cos:e} is below the regularity threshold")]
    DegenerateChart { index: usize, cos: f64 },

    #[error("singular profile at r = {r}: {reason}")]
    SingularProfile { r: f64, reason: &'static str },

    #[error("profile is not unit speed at r = {r} (|f'^2 + phi'^2 - 1| = {defect:e})")]
    NotUnitSpeed { r: f64, defect: f64 },

    #[error("invalid profile parameters: {0}")]
    InvalidProfile(String),

    #[error("order {order} is out of range 0..={max}")]
    InvalidOrder { order: usize, max: usize },

    #[error("index {index} is out of range for {len} values")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("closed form is singular: {0}")]
    SingularFormula(&'static str),

    #[error("finite-difference step {step:e} is too small for the working precision")]
    StepUnderflow { step: f64 },

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("normal equations are rank deficient along {} direction(s)", directions.len())]
    Underdetermined { directions: Vec<Vec<f64>> },

    #[error("no classification branch matches: {0}")]
    Unclassifiable(String),

    #[error("hypergeometric series does not converge for |z| = {z}")]
    SeriesDivergence { z: f64 },

    #[error("hypergeometric parameter c = {c} is a nonpositive integer")]
    InvalidHypergeometric { c: f64 },

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("invalid radius {0} (must be positive)")]
    NonPositiveRadius(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
