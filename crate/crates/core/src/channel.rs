//! Angular-momentum channels of the conormal symbol.
//!
//! On the eigenspace of the Laplace–Beltrami operator on S² with eigenvalue
//! `−l(l+1)` the operator-valued symbols become scalar rational functions of
//! `w`. Projections `P_l` are never materialized; a [`Channel`] is their index.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, rat, FactoredRationalW, ParamPoly, PolyW, Rat};

/// Angular momentum quantum number `l ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Channel(pub u32);

impl Channel {
    pub fn l(self) -> u32 {
        self.0
    }

    fn li(self) -> i64 {
        self.0 as i64
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={}", self.0)
    }
}

/// Holomorphic Mellin symbol `h(r, w) = h₀(w) + r·h₁ + r²·h₂` on one channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelSymbol {
    pub channel: Channel,
    pub h0: PolyW,
    pub h1: ParamPoly,
    pub h2: ParamPoly,
}

impl ChannelSymbol {
    pub fn hydrogen(channel: Channel) -> Self {
        ChannelSymbol { channel, h0: conormal_symbol(channel), h1: ParamPoly::z(), h2: ParamPoly::e() }
    }

    /// Coefficient `h_j` as a rational function of `w` (`j ≤ 2`).
    pub fn coefficient(&self, j: usize) -> FactoredRationalW {
        match j {
            0 => FactoredRationalW::from_poly(self.h0.clone()),
            1 => FactoredRationalW::constant(self.h1.clone()),
            2 => FactoredRationalW::constant(self.h2.clone()),
            _ => FactoredRationalW::zero(),
        }
    }
}

/// Principal conormal symbol on channel `l`: `½(w² − w − l(l+1))`.
pub fn conormal_symbol(l: Channel) -> PolyW {
    let li = l.li();
    PolyW::from_rats(&[rat(-li * (li + 1), 2), rat(-1, 2), rat(1, 2)])
}

/// Inverse of the conormal symbol on channel `l`: `2/((w + l)(w − l − 1))`.
pub fn sigma_inverse(l: Channel) -> FactoredRationalW {
    let (a, b) = nonbijectivity_points(l);
    FactoredRationalW::simple(ParamPoly::int(2), &[int(a), int(b)])
}

/// Roots of the conormal symbol on channel `l`: `(−l, l + 1)`.
pub fn nonbijectivity_points(l: Channel) -> (i64, i64) {
    (-l.li(), l.li() + 1)
}

/// The unique channel whose conormal symbol vanishes at the integer `w0`,
/// with the residue of its inverse there (the coefficient of `P_l`).
pub fn principal_part_sigma_inverse(w0: i64) -> (Channel, Rat) {
    if w0 <= 0 {
        let l = -w0;
        (Channel(l as u32), rat(-2, 2 * l + 1))
    } else {
        let l = w0 - 1;
        (Channel(l as u32), rat(2, 2 * l + 1))
    }
}

/// Weight data `(γ, γ̃, Θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightData {
    pub gamma: Rat,
    pub gamma_tilde: Option<Rat>,
    /// Lower end of `Θ = (ϑ, 0]`; `None` is `ϑ = −∞`.
    pub theta_lower: Option<Rat>,
}

impl WeightData {
    pub fn new(gamma: Rat) -> Self {
        WeightData { gamma, gamma_tilde: None, theta_lower: None }
    }

    pub fn with_gamma_tilde(mut self, gt: Rat) -> Self {
        self.gamma_tilde = Some(gt);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    /// `γ ∉ ℤ + ½`: no non-bijectivity point on `Γ_{3/2−γ}`.
    pub weight_ok: bool,
    /// `E < 0`; `None` when the energy is kept symbolic.
    pub exit_ok: Option<bool>,
    /// `½ < γ < 3/2`.
    pub in_regime: bool,
    /// `γ̃ > γ` whenever `γ̃` is given.
    pub gamma_tilde_ok: bool,
}

impl AdmissibilityReport {
    pub fn all_pass(&self) -> bool {
        self.weight_ok && self.exit_ok.unwrap_or(true) && self.in_regime && self.gamma_tilde_ok
    }
}

pub fn check_admissibility(weights: &WeightData, energy: Option<&Rat>) -> AdmissibilityReport {
    let g = &weights.gamma;
    let shifted = g - rat(1, 2);
    AdmissibilityReport {
        weight_ok: !shifted.denom().is_one(),
        exit_ok: energy.map(|e| e.is_negative()),
        in_regime: *g > rat(1, 2) && *g < rat(3, 2),
        gamma_tilde_ok: weights.gamma_tilde.as_ref().is_none_or(|gt| gt > g),
    }
}

/// Exit symbols: `σ_e = −½|ξ|² + E` must not vanish on ℝ³, which holds iff `E < 0`.
/// `σ_{ψ,e} = −½|ξ|²` is nonzero off the origin unconditionally.
pub fn exit_symbol_nonvanishing(energy: &Rat) -> bool {
    !energy.is_zero() && energy.is_negative()
}
