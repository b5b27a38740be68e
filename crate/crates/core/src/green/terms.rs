use num_traits::One;

use super::{contour_terms, AsymptoticTerm, CutoffTag, Family, GreenError, MellinMarker, Prefix, Source, Strip};
use crate::algebra::{int, rat, FactoredRationalW, ParamPoly, Rat};
use crate::channel::{check_admissibility, Channel, WeightData};
use crate::exec::Exec;
use crate::parametrix::ParametrixCache;

/// `γ̃ = 3/2 + L + N + 2`, comfortably left of every pole in play.
pub fn default_gamma_tilde(order: u32, channels: u32) -> Rat {
    rat(3, 2) + int(channels as i64 + order as i64 + 2)
}

#[derive(Clone, Copy, Debug)]
struct Job {
    family: Family,
    order: u32,
    channel: Channel,
}

/// Symbol, prefactor-included, and `r` offset of one family at order `i`.
fn family_symbol(cache: &ParametrixCache, family: Family, l: Channel, i: u32) -> (FactoredRationalW, i64) {
    let h = cache.coefficient(l, i);
    let i = i as i64;
    match family {
        Family::H0 => (h.shift(2), i),
        Family::Z => (h.shift(1).scale(&ParamPoly::z()), i + 1),
        Family::E => (h.scale(&ParamPoly::e()), i + 2),
    }
}

fn require_admissible(weights: &WeightData) -> Result<(), GreenError> {
    let report = check_admissibility(weights, None);
    if report.weight_ok && report.in_regime {
        Ok(())
    } else {
        Err(GreenError::Inadmissible(weights.gamma.clone()))
    }
}

fn jobs(families: &[Family], order: u32, channels: u32) -> Vec<Job> {
    let mut out = Vec::new();
    for &family in families {
        for i in 0..=order {
            for l in 0..=channels {
                out.push(Job { family, order: i, channel: Channel(l) });
            }
        }
    }
    out
}

fn run(
    jobs: Vec<Job>,
    exec: Exec,
    f: impl Fn(Job) -> Result<Vec<AsymptoticTerm>, GreenError> + Sync + Send,
) -> Result<Vec<AsymptoticTerm>, GreenError> {
    let mut out = Vec::new();
    for chunk in exec.map(jobs, f) {
        out.extend(chunk?);
    }
    out.sort_by_key(|t| t.sort_key());
    Ok(out)
}

/// All `G_I` terms for orders `0..=order` and channels `0..=channels`.
///
/// Z family: `Z·T¹h⁻¹ᵢ` on `(3/2−γ, 5/2−γ)` with offset `i+1`.
/// E family: `E·h⁻¹ᵢ` on `(3/2−γ, 7/2−γ)` with offset `i+2`.
pub fn gi_terms(
    weights: &WeightData,
    order: u32,
    channels: u32,
    exec: Exec,
) -> Result<Vec<AsymptoticTerm>, GreenError> {
    require_admissible(weights)?;
    let cache = ParametrixCache::global();
    let base = rat(3, 2) - &weights.gamma;
    let z_strip = Strip::counter_clockwise(base.clone(), &base + Rat::one())?;
    let e_strip = Strip::counter_clockwise(base.clone(), &base + int(2))?;
    let marker = MellinMarker::new(Source::GI, Prefix::Plain, CutoffTag::OmegaDoubleprimeV);
    run(jobs(&[Family::Z, Family::E], order, channels), exec, |job| {
        let (f, offset) = family_symbol(cache, job.family, job.channel, job.order);
        let strip = if job.family == Family::Z { &z_strip } else { &e_strip };
        contour_terms(&f, strip, offset, marker, job.channel, job.order, job.family)
    })
}

/// All `G_II` terms on the strip `(3/2−γ̃, 3/2−γ)`.
///
/// Families `T²h⁻¹ᵢ` (marker `op(h₀)`), `Z·T¹h⁻¹ᵢ` and `E·h⁻¹ᵢ` with offsets
/// `i`, `i+1`, `i+2`. Fails if some pole of a computed channel lies at or left
/// of `3/2−γ̃`.
pub fn gii_terms(
    weights: &WeightData,
    gamma_tilde: &Rat,
    order: u32,
    channels: u32,
    exec: Exec,
) -> Result<Vec<AsymptoticTerm>, GreenError> {
    require_admissible(weights)?;
    let cache = ParametrixCache::global();
    let left = rat(3, 2) - gamma_tilde;
    let right = rat(3, 2) - &weights.gamma;
    let strip = Strip::counter_clockwise(left.clone(), right)
        .map_err(|_| GreenError::GammaTildeTooSmall { gamma_tilde: gamma_tilde.clone(), pole: left.clone() })?;
    let all = jobs(&[Family::H0, Family::Z, Family::E], order, channels);
    for job in &all {
        let (f, _) = family_symbol(cache, job.family, job.channel, job.order);
        if let Some((q, _)) = f.poles().into_iter().find(|(q, _)| *q <= left) {
            return Err(GreenError::GammaTildeTooSmall { gamma_tilde: gamma_tilde.clone(), pole: q });
        }
    }
    run(all, exec, |job| {
        let (f, offset) = family_symbol(cache, job.family, job.channel, job.order);
        let prefix = if job.family == Family::H0 { Prefix::OpH0 } else { Prefix::Plain };
        let marker = MellinMarker::new(Source::GII, prefix, CutoffTag::OmegaDoubleprimeMinusOneV);
        contour_terms(&f, &strip, offset, marker, job.channel, job.order, job.family)
    })
}
