//! Residue calculus for the Green operator.
//!
//! Both kinds of Green-operator pieces reduce to contour integrals of the form
//! `(1/2πi) ∮ r^{−w} f(w) (M v)(w) dw` around a weight strip, evaluated with
//! Cauchy's formula. Each pole of `f` inside the strip contributes a term
//! `coeff · r^{offset − q} · (M v)(q)` (with logarithms and derivatives of the
//! Mellin functional for higher-order poles).

mod assemble;
mod canonical;
mod strip;
mod terms;

pub use assemble::{
    assemble, assemble_with, complete_order, specialize_energy, substitute_parameters, AssembleOptions, ChannelGroup,
    FactorizationFailure, GreenExpansion, QFunctional,
};
pub use canonical::{canonicalize_marker, CanonicalMarker, CanonicalTerm, Component};
pub use strip::{contour_terms, poles_in_strip, Orientation, Strip};
pub use terms::{default_gamma_tilde, gi_terms, gii_terms};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{fmt_rat, ParamPoly, Rat};
use crate::channel::Channel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Source {
    #[serde(rename = "GI")]
    GI,
    #[serde(rename = "GII")]
    GII,
}

/// Operator standing in front of the cut-off input inside the Mellin functional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prefix {
    Plain,
    OpH0,
    OpH0PlusZr,
    #[serde(rename = "multiply_rZ_plus_r2E")]
    MultiplyRzPlusR2e,
}

/// Which cut-off combination the functional is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutoffTag {
    /// `(M ω'' u)`.
    OmegaDoubleprimeV,
    /// `(M (ω'' − 1) …)`.
    OmegaDoubleprimeMinusOneV,
}

/// The symbol family a term came from: `T²h⁻¹ᵢ·h₀`, `T¹h⁻¹ᵢ·Z` or `h⁻¹ᵢ·E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    H0,
    Z,
    E,
}

/// Symbolic Mellin-functional value such as `(M(ω''−1) op(h₀) v)(w₀)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MellinMarker {
    pub source: Source,
    pub prefix: Prefix,
    pub cutoff_tag: CutoffTag,
    pub point: i64,
    pub derivative_order: u32,
}

impl MellinMarker {
    pub fn new(source: Source, prefix: Prefix, cutoff_tag: CutoffTag) -> Self {
        MellinMarker { source, prefix, cutoff_tag, point: 0, derivative_order: 0 }
    }

    pub fn at(mut self, point: i64, derivative_order: u32) -> Self {
        self.point = point;
        self.derivative_order = derivative_order;
        self
    }
}

impl fmt::Display for MellinMarker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = match (self.cutoff_tag, self.prefix) {
            (CutoffTag::OmegaDoubleprimeV, Prefix::Plain) => "M ω''u".to_string(),
            (CutoffTag::OmegaDoubleprimeV, p) => format!("M ω'' {} u", prefix_str(p)),
            (CutoffTag::OmegaDoubleprimeMinusOneV, Prefix::Plain) => "M(ω''−1) v".to_string(),
            (CutoffTag::OmegaDoubleprimeMinusOneV, p) => format!("M(ω''−1) {} v", prefix_str(p)),
        };
        let d = match self.derivative_order {
            0 => String::new(),
            1 => "'".into(),
            k => format!("^({k})"),
        };
        write!(f, "({inner}){d}({})", self.point)
    }
}

fn prefix_str(p: Prefix) -> &'static str {
    match p {
        Prefix::Plain => "",
        Prefix::OpH0 => "op(h₀)",
        Prefix::OpH0PlusZr => "op(h₀ + Zr)",
        Prefix::MultiplyRzPlusR2e => "(rZ + r²E)",
    }
}

/// One term `coeff · r^{r_power} · ln^{log_power} r · P_l · marker`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticTerm {
    pub channel: Channel,
    /// Parametrix order `i` that produced the term.
    pub order: u32,
    pub family: Family,
    pub r_power: i64,
    pub log_power: u32,
    #[serde(rename = "coefficient")]
    pub coeff: ParamPoly,
    pub marker: MellinMarker,
}

impl AsymptoticTerm {
    /// Ordering key: channel, r-power, marker point, prefix, then the rest.
    pub fn sort_key(&self) -> impl Ord {
        (
            self.channel,
            self.r_power,
            self.marker.point,
            self.marker.prefix,
            self.marker.source,
            self.family,
            self.order,
            self.log_power,
            self.marker.derivative_order,
            self.marker.cutoff_tag,
        )
    }
}

impl fmt::Display for AsymptoticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.r_power {
            0 => String::new(),
            1 => " r".into(),
            k => format!(" r^{k}"),
        };
        let lg = match self.log_power {
            0 => String::new(),
            1 => " ln r".into(),
            k => format!(" ln^{k} r"),
        };
        write!(f, "{}{}{} P_{} {}", self.coeff, r, lg, self.channel.0, self.marker)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GreenError {
    #[error("pole at w = {} lies on the contour Re w = {}; shift the weight", fmt_rat(.pole), fmt_rat(.line))]
    PoleOnContour { pole: Rat, line: Rat },
    #[error("weight γ = {} is not admissible (need ½ < γ < 3/2, γ ∉ ℤ + ½)", fmt_rat(.0))]
    Inadmissible(Rat),
    #[error("auxiliary weight γ̃ = {} too small: pole at {} lies left of 3/2 − γ̃", fmt_rat(.gamma_tilde), fmt_rat(.pole))]
    GammaTildeTooSmall { gamma_tilde: Rat, pole: Rat },
    #[error("pole at w = {} is not an integer; markers need integer points", fmt_rat(.0))]
    NonIntegerPole(Rat),
    #[error("empty or inverted strip ({}, {})", fmt_rat(.0), fmt_rat(.1))]
    BadStrip(Rat, Rat),
}
