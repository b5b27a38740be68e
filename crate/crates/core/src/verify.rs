//! Exact cross-checks between the parametrix, the assembled Green expansion
//! and the Frobenius oracle, bundled into one report.

use std::fmt;

use serde::Serialize;

use crate::algebra::{int, rat, Monomial, ParamPoly, Rat};
use crate::channel::{Channel, WeightData};
use crate::exec::Exec;
use crate::green::{assemble_with, specialize_energy, AssembleOptions, GreenError};
use crate::oracle::{
    apply_radial_operator, bound_state_energy, exp_series, frobenius_series, polynomial_part_of_eigenstate,
    RadialSeries,
};
use crate::parametrix::ParametrixCoefficients;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// One entry of the bound-state table: the `r²` factor of channel 0 or the
/// `r³` factor of channel 1 at `E = −Z²/(2n²)`, relative to `Z²` resp. `Z³`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundStateRow {
    pub n: u32,
    pub channel: u32,
    pub r_power: u32,
    #[serde(serialize_with = "crate::algebra::serialize_rat")]
    pub substituted: Rat,
    #[serde(serialize_with = "crate::algebra::serialize_rat")]
    pub printed: Rat,
    #[serde(serialize_with = "crate::algebra::serialize_rat")]
    pub oracle: Rat,
    /// Taylor factor of `r^l e^{−Zr/n}` when `l = n − 1`.
    #[serde(serialize_with = "serialize_opt_rat")]
    pub closed_form: Option<Rat>,
}

fn serialize_opt_rat<S: serde::Serializer>(q: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => crate::algebra::serialize_rat(q, s),
        None => s.serialize_none(),
    }
}

impl BoundStateRow {
    pub fn sign_discrepancy(&self) -> bool {
        self.substituted != self.printed
    }

    pub fn consistent(&self) -> bool {
        self.substituted == self.oracle && self.closed_form.as_ref().is_none_or(|c| *c == self.substituted)
    }
}

/// Printed factor `(1 − 1/(2n²))/3` (channel 0) or `(1 − 1/n²)/10` (channel 1).
pub fn printed_bound_state_factor(channel: u32, n: u32) -> Rat {
    let n2 = int((n * n) as i64);
    match channel {
        0 => (int(1) - rat(1, 2) / &n2) / int(3),
        _ => (int(1) - int(1) / &n2) / int(10),
    }
}

/// Factor obtained by substituting `E_n` into the grouped expansion:
/// `(1 + 1/(2n²))/3` and `(1 + 1/n²)/10`.
pub fn substituted_bound_state_factor(channel: u32, n: u32) -> Rat {
    let n2 = int((n * n) as i64);
    match channel {
        0 => (int(1) + rat(1, 2) / &n2) / int(3),
        _ => (int(1) + int(1) / &n2) / int(10),
    }
}

fn leading_factor(p: &ParamPoly, z_power: u32) -> Option<Rat> {
    let m = Monomial::new(z_power, 0);
    (p.len() == 1 && p.coeff(m) != Rat::from_integer(0.into())).then(|| p.coeff(m))
}

/// Bound-state table for the given principal quantum numbers.
pub fn bound_state_table(ns: &[u32], exec: Exec) -> Result<Vec<BoundStateRow>, GreenError> {
    let opts = AssembleOptions { weights: WeightData::new(int(1)), order: 3, channels: 1, exec };
    let g = assemble_with(&opts)?;
    let mut rows = Vec::new();
    for &n in ns {
        let s = specialize_energy(&g, n);
        let e = bound_state_energy(n);
        for (l, k, zp) in [(0u32, 2usize, 2u32), (1, 2, 3)] {
            let series = s.group(l).and_then(|grp| grp.series()).map(|ser| ser.coeff(k));
            let substituted = series.as_ref().and_then(|c| leading_factor(c, zp)).unwrap_or_else(|| int(0));
            let frob = frobenius_series(Channel(l), k).substitute(&ParamPoly::z(), &e);
            let oracle_poly = &frob.coeff(k) * &ParamPoly::z().pow(l);
            let oracle = leading_factor(&oracle_poly, zp).unwrap_or_else(|| int(0));
            let closed_form = (l + 1 == n).then(|| rat(1, 2 * (n * n) as i64));
            rows.push(BoundStateRow {
                n,
                channel: l,
                r_power: l + k as u32,
                substituted,
                printed: printed_bound_state_factor(l, n),
                oracle,
                closed_form,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub order: u32,
    pub channels: u32,
    pub gamma: Rat,
    pub n: Option<u32>,
    /// Perturbs one parametrix coefficient and one series coefficient, to
    /// confirm that the checks notice.
    pub inject_fault: bool,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order: 8, channels: 5, gamma: int(1), n: None, inject_fault: false, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub bound_state: Vec<BoundStateRow>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn normalized(series: &RadialSeries) -> Option<RadialSeries> {
    let m = Monomial::new(series.channel.l(), 0);
    let coefficients = series.coefficients.iter().map(|c| c.div_monomial(m)).collect::<Option<Vec<_>>>()?;
    Some(RadialSeries { channel: series.channel, coefficients })
}

pub fn verify(opts: &VerifyOptions) -> Result<VerificationReport, GreenError> {
    let mut checks = Vec::new();
    let (n_ord, l_max) = (opts.order, opts.channels);

    let relation_results = opts.exec.map((0..=l_max).collect(), |l| {
        let mut pc = ParametrixCoefficients::compute(Channel(l), n_ord);
        if opts.inject_fault && l == 0 {
            let i = n_ord.min(1) as usize;
            pc.coeffs[i] = pc.coeffs[i].scale(&ParamPoly::int(2));
        }
        (l, pc.verify())
    });
    for (l, res) in relation_results {
        let bad: Vec<usize> = res.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i).collect();
        let detail = if bad.is_empty() { format!("orders 0..={n_ord}") } else { format!("fails at orders {bad:?}") };
        checks.push(Check::new(format!("defining relations, l = {l}"), bad.is_empty(), detail));
    }

    for l in 0..=l_max {
        let res = apply_radial_operator(&frobenius_series(Channel(l), n_ord as usize));
        let first_bad = res.iter().position(|c| !c.is_zero());
        checks.push(Check::new(
            format!("Frobenius residual, l = {l}"),
            first_bad.is_none(),
            first_bad.map_or(format!("zero through k = {n_ord}"), |k| format!("nonzero at k = {k}")),
        ));
    }

    let g = assemble_with(&AssembleOptions {
        weights: WeightData::new(opts.gamma.clone()),
        order: n_ord,
        channels: l_max,
        exec: opts.exec,
    })?;
    let max_log = g.max_log_power();
    checks.push(Check::new(
        "simple poles, no log terms",
        max_log == 0,
        format!("{} terms, max log power {max_log}", g.terms.len()),
    ));
    for grp in &g.groups {
        let l = grp.channel.l();
        let Some(series) = grp.series() else {
            let why = grp.factored.as_ref().err().map(|e| e.to_string()).unwrap_or_default();
            checks.push(Check::new(format!("rank-1 factorization, l = {l}"), false, why));
            continue;
        };
        let mut series = series.clone();
        if opts.inject_fault && l == 0 && series.coefficients.len() > 1 {
            series.coefficients[1] = &series.coefficients[1] + &ParamPoly::one();
        }
        let k = series.order();
        let Some(norm) = normalized(&series) else {
            checks.push(Check::new(format!("series normalization, l = {l}"), false, "series not divisible by Z^l"));
            continue;
        };
        let residual = apply_radial_operator(&norm);
        let first_bad = residual.iter().position(|c| !c.is_zero());
        checks.push(Check::new(
            format!("radial residual of assembled series, l = {l}"),
            first_bad.is_none(),
            first_bad.map_or(format!("zero through k = {k}"), |b| format!("nonzero at k = {b}")),
        ));
        let matches = norm == frobenius_series(Channel(l), k);
        checks.push(Check::new(
            format!("assembled series = Frobenius, l = {l}"),
            matches,
            format!("through r^{}", l as usize + k),
        ));
    }

    let ns: Vec<u32> = match opts.n {
        Some(n) => vec![n],
        None => vec![1, 2],
    };
    let bound_state = bound_state_table(&ns, opts.exec)?;
    for row in &bound_state {
        checks.push(Check::new(
            format!("bound-state factor n = {}, channel {} r^{}", row.n, row.channel, row.r_power),
            row.consistent(),
            format!(
                "substituted {} · oracle {} · printed {}{}",
                row.substituted,
                row.oracle,
                row.printed,
                if row.sign_discrepancy() { " (printed sign differs)" } else { "" }
            ),
        ));
    }

    if let Some(n) = opts.n {
        if n == 0 {
            checks.push(Check::new("principal quantum number", false, "n must be positive"));
        } else {
            let k = n_ord as usize;
            for l in 0..n.min(l_max + 1) {
                let poly = polynomial_part_of_eigenstate(n, Channel(l), k).expect("l < n");
                let deg = (n - l - 1) as usize;
                let ok = poly.iter().skip(deg + 1).all(|c| c.is_zero());
                checks.push(Check::new(
                    format!("Laguerre termination n = {n}, l = {l}"),
                    ok,
                    format!("polynomial degree {deg}"),
                ));
            }
            let l = n - 1;
            let s = frobenius_series(Channel(l), k).substitute(&ParamPoly::z(), &bound_state_energy(n));
            let ok = s.coefficients == exp_series(&rat(-1, n as i64), k);
            checks.push(Check::new(
                format!("n = {n}, l = {l} series = r^{l} e^(−Zr/{n})"),
                ok,
                format!("through k = {k}"),
            ));
        }
    }

    Ok(VerificationReport { checks, bound_state })
}
