//! Rotational hypersurfaces in Euclidean space: curvature, the
//! linearized operators `L_k` applied to the Gauss map, classification of
//! eigen-Gauss-map profiles, minimal and flat profiles, and an exact audit
//! of the integer constants behind the classification.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x < tol)` rejects NaN

pub mod audit;
pub mod classifier;
pub mod conventions;
pub mod dd;
pub mod error;
pub mod fd;
pub mod geometry;
pub mod linalg;
pub mod lk;
pub mod profile;
pub mod quadrature;
pub mod scalar;
pub mod solvers;
pub mod symfunc;

pub use error::{Error, Result};
pub use scalar::{DoubleDouble, Real};

/// Profile curve in double precision.
pub type Profile = profile::ProfileCurve<f64>;
/// Profile curve in double-double precision.
pub type ProfileDd = profile::ProfileCurve<DoubleDouble>;
pub type Chart = geometry::ChartPoint<f64>;
pub type Spectrum = geometry::CurvatureSpectrum<f64>;
pub type SymmetricFunctions = symfunc::SymmetricFunctionSet<f64>;
pub type Newton = symfunc::NewtonTransform<f64>;
pub type Verdict = classifier::ClassificationVerdict<f64>;
pub type MinimalSolution = solvers::MinimalProfileSolution<f64>;
