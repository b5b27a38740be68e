//! Exact construction of the Mellin-symbol parametrix and Green-operator
//! asymptotics of the hydrogen Hamiltonian, treated as a Fuchs-type operator
//! on the stretched cone over the sphere.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact rationals, `(Z, E)` polynomials and factored rational
//!   functions of the Mellin covariable `w`.
//! * [`channel`]: the per-angular-momentum conormal symbol and its inverse.
//! * [`parametrix`]: the order-by-order inverse symbol `h⁻¹ᵢ(w)`.
//! * [`green`]: residue calculus over weight strips and grouping of the
//!   Green-operator terms into `series_l(r) · Q_l(u)`.
//! * [`oracle`]: Frobenius series of the radial equation, used as an
//!   independent check.
//! * [`numerics`]: floating-point Mellin transforms and the `Q_l` functionals.
//! * [`verify`]: the exact cross-checks bundled as a report.

// Error payloads carry exact rationals; the size only matters on the error path.
#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod channel;
pub mod exec;
pub mod green;
pub mod numerics;
pub mod oracle;
pub mod parametrix;
pub mod verify;

pub use algebra::{FactoredRationalW, Monomial, ParamPoly, PolyW, Rat};
pub use channel::Channel;
pub use exec::Exec;
