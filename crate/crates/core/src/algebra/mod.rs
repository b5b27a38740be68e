//! Exact arithmetic: rationals, polynomials in `(Z, E)`, polynomials in `w`
//! and rational functions of `w` with factored linear denominators.

mod param;
mod polyw;
mod rat;
mod rational;

pub use param::{fmt_monomial, superscript, Monomial, ParamPoly};
pub use polyw::PolyW;
pub use rat::{
    deserialize_rat, fmt_rat, int, is_integer, parse_rat, rat, rat_gcd, rat_to_f64, serialize_rat, to_i64, Rat,
};
pub use rational::{FactoredRationalW, PrincipalTerm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("evaluation at the pole w = {}", fmt_rat(.0))]
    PoleEvaluation(Rat),
    #[error("inexact division: nonzero remainder")]
    InexactDivision,
}
