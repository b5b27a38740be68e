//! Grouping the raw term table into `Σ_l P_l series_l(r) · Q_l`.
//!
//! Per channel the canonical marker coefficients form a matrix with one row
//! per power `r^{l+k}`. When it has rank one the row of `r^l` is the functional
//! and the pivot column gives the series. The series is normalized to lead with
//! `Z^l`, so `Q_l` is stored as numerators over `Z^l`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{
    canonicalize_marker, default_gamma_tilde, gi_terms, gii_terms, AsymptoticTerm, CanonicalMarker, Component,
    GreenError,
};
use crate::algebra::{ParamPoly, Rat};
use crate::channel::{Channel, WeightData};
use crate::exec::Exec;
use crate::oracle::{bound_state_energy, RadialSeries};

#[derive(Clone, Debug)]
pub struct AssembleOptions {
    pub weights: WeightData,
    /// Parametrix order `N`; also the highest complete power of `r`.
    pub order: u32,
    /// Channel cutoff `L`.
    pub channels: u32,
    pub exec: Exec,
}

impl AssembleOptions {
    pub fn new(gamma: Rat, order: u32, channels: u32) -> Self {
        AssembleOptions { weights: WeightData::new(gamma), order, channels, exec: Exec::default() }
    }
}

/// `Q_l = Σ numerators[m] · m / Z^{z_power}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QFunctional {
    pub channel: Channel,
    pub z_power: u32,
    pub numerators: BTreeMap<CanonicalMarker, ParamPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationFailure {
    pub channel: Channel,
    /// Power of `r` where the rank-one structure first breaks.
    pub r_power: i64,
    pub reason: String,
}

impl fmt::Display for FactorizationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "channel {}: no rank-1 factorization at r^{}: {}", self.channel.0, self.r_power, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelGroup {
    pub channel: Channel,
    /// `rows[k]` holds the canonical coefficients of `r^{l+k}`.
    pub rows: Vec<BTreeMap<CanonicalMarker, ParamPoly>>,
    pub factored: Result<(RadialSeries, QFunctional), FactorizationFailure>,
}

impl ChannelGroup {
    pub fn series(&self) -> Option<&RadialSeries> {
        self.factored.as_ref().ok().map(|(s, _)| s)
    }

    pub fn functional(&self) -> Option<&QFunctional> {
        self.factored.as_ref().ok().map(|(_, q)| q)
    }
}

#[derive(Clone, Debug)]
pub struct GreenExpansion {
    pub terms: Vec<AsymptoticTerm>,
    pub order: u32,
    pub channel_cutoff: u32,
    /// Weights as used, with `γ̃` filled in.
    pub weights: WeightData,
    pub warnings: Vec<String>,
    pub groups: Vec<ChannelGroup>,
}

impl GreenExpansion {
    pub fn group(&self, l: u32) -> Option<&ChannelGroup> {
        self.groups.iter().find(|g| g.channel == Channel(l))
    }

    pub fn max_log_power(&self) -> u32 {
        self.terms.iter().map(|t| t.log_power).max().unwrap_or(0)
    }
}

/// Number of complete orders `k` past `r^l`, i.e. `N − l`, or `None` if `l > N`.
pub fn complete_order(l: u32, order: u32) -> Option<u32> {
    order.checked_sub(l)
}

pub fn assemble(weights: &WeightData, order: u32, channels: u32) -> Result<GreenExpansion, GreenError> {
    assemble_with(&AssembleOptions { weights: weights.clone(), order, channels, exec: Exec::default() })
}

pub fn assemble_with(opts: &AssembleOptions) -> Result<GreenExpansion, GreenError> {
    let mut weights = opts.weights.clone();
    let gt = weights.gamma_tilde.clone().unwrap_or_else(|| default_gamma_tilde(opts.order, opts.channels));
    weights.gamma_tilde = Some(gt.clone());
    let mut terms = gi_terms(&weights, opts.order, opts.channels, opts.exec)?;
    terms.extend(gii_terms(&weights, &gt, opts.order, opts.channels, opts.exec)?);
    terms.sort_by_key(|t| t.sort_key());
    let mut warnings = Vec::new();
    if opts.order > opts.channels {
        warnings.push(format!(
            "channels above L = {} enter at r^{} and are omitted; powers r^{}..r^{} are incomplete",
            opts.channels,
            opts.channels + 1,
            opts.channels + 1,
            opts.order
        ));
    }
    let groups = build_groups(&terms, opts.order, opts.channels, opts.exec);
    Ok(GreenExpansion { terms, order: opts.order, channel_cutoff: opts.channels, weights, warnings, groups })
}

fn build_groups(terms: &[AsymptoticTerm], order: u32, channels: u32, exec: Exec) -> Vec<ChannelGroup> {
    let ls: Vec<u32> = (0..=channels.min(order)).collect();
    exec.map(ls, |l| group_channel(terms, Channel(l), order))
}

fn group_channel(terms: &[AsymptoticTerm], l: Channel, order: u32) -> ChannelGroup {
    let kmax = complete_order(l.0, order).expect("channel within order");
    let base = l.0 as i64;
    let mut rows: Vec<BTreeMap<CanonicalMarker, ParamPoly>> = vec![BTreeMap::new(); kmax as usize + 1];
    let mut failure = None;
    for t in terms.iter().filter(|t| t.channel == l && t.r_power <= order as i64) {
        let Some(c) = canonicalize_marker(t) else {
            failure.get_or_insert(fail(l, t.r_power, "term without its prefactor"));
            continue;
        };
        if c.log_power > 0 {
            failure.get_or_insert(fail(l, t.r_power, "logarithmic term"));
        }
        if c.r_power < base {
            failure.get_or_insert(fail(l, t.r_power, "power below r^l"));
            continue;
        }
        let row = &mut rows[(c.r_power - base) as usize];
        let entry = row.entry(c.marker).or_default();
        *entry += &c.coeff;
        if entry.is_zero() {
            row.remove(&c.marker);
        }
    }
    let factored = match failure {
        Some(f) => Err(f),
        None => factor(l, &rows),
    };
    ChannelGroup { channel: l, rows, factored }
}

fn fail(l: Channel, r_power: i64, reason: &str) -> FactorizationFailure {
    FactorizationFailure { channel: l, r_power, reason: reason.to_string() }
}

fn factor(
    l: Channel,
    rows: &[BTreeMap<CanonicalMarker, ParamPoly>],
) -> Result<(RadialSeries, QFunctional), FactorizationFailure> {
    let base = l.0 as i64;
    let lead = &rows[0];
    if lead.is_empty() {
        return Err(fail(l, base, "leading row vanishes"));
    }
    let pivot = lead
        .iter()
        .find(|(_, c)| c.as_constant().is_some())
        .or_else(|| lead.iter().next())
        .map(|(m, c)| (*m, c.clone()))
        .expect("non-empty row");
    let (pm, pc) = pivot;
    let zl = ParamPoly::z().pow(l.0);
    let mut series = Vec::with_capacity(rows.len());
    for (k, row) in rows.iter().enumerate() {
        let rp = base + k as i64;
        let vk = row.get(&pm).cloned().unwrap_or_default();
        let markers = lead.keys().chain(row.keys());
        for m in markers {
            let a = &row.get(m).cloned().unwrap_or_default() * &pc;
            let b = &lead.get(m).cloned().unwrap_or_default() * &vk;
            if a != b {
                return Err(fail(l, rp, &format!("marker {m} is not proportional to the leading row")));
            }
        }
        let sk = (&zl * &vk).div_exact(&pc).ok_or_else(|| fail(l, rp, "series coefficient is not polynomial"))?;
        series.push(sk);
    }
    let q = QFunctional { channel: l, z_power: l.0, numerators: lead.clone() };
    Ok((RadialSeries { channel: l, coefficients: series }, q))
}

/// Substitutes `E = −Z²/(2n²)` into every coefficient.
pub fn specialize_energy(g: &GreenExpansion, n: u32) -> GreenExpansion {
    substitute_parameters(g, &ParamPoly::z(), &bound_state_energy(n))
}

/// Substitutes polynomials for `Z` and `E` everywhere. A constant `Z` is also
/// folded into the `Z^l` denominators of the functionals.
pub fn substitute_parameters(g: &GreenExpansion, z: &ParamPoly, e: &ParamPoly) -> GreenExpansion {
    let sub = |p: &ParamPoly| p.substitute(z, e);
    let terms = g
        .terms
        .iter()
        .filter_map(|t| {
            let coeff = sub(&t.coeff);
            (!coeff.is_zero()).then(|| AsymptoticTerm { coeff, ..t.clone() })
        })
        .collect();
    let sub_row = |row: &BTreeMap<CanonicalMarker, ParamPoly>| {
        row.iter().map(|(m, c)| (*m, sub(c))).filter(|(_, c)| !c.is_zero()).collect::<BTreeMap<_, _>>()
    };
    let z_const = z.as_constant().filter(|c| !c.is_zero());
    let sub_q = |q: QFunctional| {
        let mut numerators = sub_row(&q.numerators);
        let mut z_power = q.z_power;
        if let Some(c) = &z_const {
            let inv = num_traits::pow(c.recip(), z_power as usize);
            numerators = numerators.into_iter().map(|(m, p)| (m, p.scale(&inv))).collect();
            z_power = 0;
        }
        QFunctional { numerators, z_power, ..q }
    };
    let groups = g
        .groups
        .iter()
        .map(|grp| ChannelGroup {
            channel: grp.channel,
            rows: grp.rows.iter().map(sub_row).collect(),
            factored: grp.factored.clone().map(|(s, q)| (s.substitute(z, e), sub_q(q))),
        })
        .collect();
    GreenExpansion { terms, groups, ..g.clone() }
}

impl fmt::Display for QFunctional {
    /// Printed-style bracket: matching inner `rZ`/`r²E` pairs merge into
    /// `(M ω''(rZ + r²E) u)` and outer `op(h₀)`/`rZ` pairs into `op(h₀ + Zr)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<(ParamPoly, String)> = Vec::new();
        let mut used = std::collections::BTreeSet::new();
        let pairs = [
            (Component::InnerZr, Component::InnerEr2, "M ω''(rZ + r²E) u"),
            (Component::OuterH0, Component::OuterZr, "M(ω''−1) op(h₀ + Zr) v"),
        ];
        for (m, c) in &self.numerators {
            if used.contains(m) {
                continue;
            }
            let mut label = None;
            for (a, b, merged) in pairs {
                if m.component == a {
                    let partner = CanonicalMarker { component: b, ..*m };
                    if self.numerators.get(&partner) == Some(c) {
                        used.insert(partner);
                        label = Some(format!("({merged})({})", m.point));
                    }
                }
            }
            used.insert(*m);
            pieces.push((c.clone(), label.unwrap_or_else(|| m.to_string())));
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        let denom = match self.z_power {
            0 => String::new(),
            1 => "/Z".into(),
            k => format!("/Z^{k}"),
        };
        for (idx, (c, label)) in pieces.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{label}{denom}")?;
            } else {
                write!(f, "[{c}]{denom}·{label}")?;
            }
        }
        Ok(())
    }
}
