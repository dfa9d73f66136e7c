//! Special profile curves: minimal profiles, flat profiles and the
//! classification fixtures, with the numerical tools they need.

pub mod fixtures;
pub mod flat;
pub mod hypergeometric;
pub mod minimal;
pub mod ode;

pub use fixtures::{fixture_profiles, Fixture};
pub use flat::{flat_profile, FlatKind};
pub use hypergeometric::{gauss_hypergeometric, Hypergeometric};
pub use minimal::{solve_minimal_profile, MinimalOptions, MinimalProfileSolution, MinimalSample};
pub use ode::{DormandPrince, OdeOutcome};
