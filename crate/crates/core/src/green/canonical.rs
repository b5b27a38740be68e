//! Rewriting raw markers into the basis used by the grouped functionals.
//!
//! With `(M r^k v)(w) = (M v)(w + k)`, a `Z`-prefactored value `Z·(M v)(q)` is
//! `(M rZ v)(q − 1)` and an `E`-prefactored one is `(M r²E v)(q − 2)`. The
//! prefactor is divided out of the coefficient and absorbed into the component.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AsymptoticTerm, Family, Source};
use crate::algebra::{Monomial, ParamPoly};
use crate::channel::Channel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    /// `(M(ω''−1) op(h₀) v)`.
    OuterH0,
    /// `(M(ω''−1) rZ v)`.
    OuterZr,
    /// `(M(ω''−1) r²E v)`.
    OuterEr2,
    /// `(M ω'' rZ u)`.
    InnerZr,
    /// `(M ω'' r²E u)`.
    InnerEr2,
}

impl Component {
    pub fn label(self) -> &'static str {
        match self {
            Component::OuterH0 => "M(ω''−1) op(h₀) v",
            Component::OuterZr => "M(ω''−1) rZ v",
            Component::OuterEr2 => "M(ω''−1) r²E v",
            Component::InnerZr => "M ω'' rZ u",
            Component::InnerEr2 => "M ω'' r²E u",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalMarker {
    pub point: i64,
    pub component: Component,
    pub derivative_order: u32,
}

impl fmt::Display for CanonicalMarker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.derivative_order {
            0 => String::new(),
            1 => "'".into(),
            k => format!("^({k})"),
        };
        write!(f, "({}){d}({})", self.component.label(), self.point)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalTerm {
    pub channel: Channel,
    pub r_power: i64,
    pub log_power: u32,
    /// Coefficient with the `Z`/`E` prefactor removed.
    pub coeff: ParamPoly,
    pub marker: CanonicalMarker,
}

/// Canonical form of a raw term. The prefactor always divides the coefficient
/// of the hydrogen terms; `None` signals a term that does not carry it.
pub fn canonicalize_marker(t: &AsymptoticTerm) -> Option<CanonicalTerm> {
    let q = t.marker.point;
    let (point, component, coeff) = match (t.marker.source, t.family) {
        (Source::GII, Family::H0) => (q, Component::OuterH0, t.coeff.clone()),
        (Source::GII, Family::Z) => (q - 1, Component::OuterZr, t.coeff.div_monomial(Monomial::new(1, 0))?),
        (Source::GII, Family::E) => (q - 2, Component::OuterEr2, t.coeff.div_monomial(Monomial::new(0, 1))?),
        (Source::GI, Family::Z) => (q - 1, Component::InnerZr, t.coeff.div_monomial(Monomial::new(1, 0))?),
        (Source::GI, Family::E) => (q - 2, Component::InnerEr2, t.coeff.div_monomial(Monomial::new(0, 1))?),
        (Source::GI, Family::H0) => return None,
    };
    Some(CanonicalTerm {
        channel: t.channel,
        r_power: t.r_power,
        log_power: t.log_power,
        coeff,
        marker: CanonicalMarker { point, component, derivative_order: t.marker.derivative_order },
    })
}
