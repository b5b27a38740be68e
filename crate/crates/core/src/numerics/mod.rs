//! Floating-point evaluation of the grouped functionals.
//!
//! Mellin transforms `(M f)(w) = ∫₀^∞ r^{w−1} f(r) dr` are computed by
//! adaptive quadrature. The Fuchs operator `op(h₀)` is applied as the
//! differential expression `½(θ² − θ − l(l+1))`, `θ = −r d/dr`, which agrees
//! with the Mellin operator on smooth cut-off functions.

mod cutoff;
mod functional;
mod profile;
mod quadrature;

pub use cutoff::CutoffSpec;
pub use functional::{
    apply_h0, component_value, end_to_end_check, evaluate_functional, mellin, q0_value, q1_value, weighted_mellin,
    CutoffTriple,
};
pub use profile::RadialProfile;
pub use quadrature::{integrate, Estimate, QuadratureSpec};

use crate::green::GreenError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("quadrature did not converge: partial value {partial:e}, error estimate {error:e}")]
    NonConvergence { partial: f64, error: f64 },
    #[error("invalid quadrature spec: {0}")]
    BadSpec(String),
    #[error("invalid cut-off: {0}")]
    BadCutoff(String),
    #[error(transparent)]
    Green(#[from] GreenError),
    #[error("{0}")]
    NotFactorized(String),
}
