use num_complex::Complex64;

use super::{integrate, CutoffSpec, NumericsError, QuadratureSpec, RadialProfile};
use crate::algebra::rat;
use crate::channel::{Channel, WeightData};
use crate::exec::Exec;
use crate::green::{assemble, CanonicalMarker, Component, QFunctional};

/// The cut-offs entering the functionals: `ω`, `ω̃'` and `ω̃`, with
/// `ω'' = ω̃'·ω`. Requires `ω̃ ≡ 1` on the support of `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct CutoffTriple {
    pub omega: CutoffSpec,
    pub omega_tilde_prime: CutoffSpec,
    pub omega_tilde: CutoffSpec,
}

impl Default for CutoffTriple {
    fn default() -> Self {
        CutoffTriple {
            omega: CutoffSpec::new(1.0, 2.0),
            omega_tilde_prime: CutoffSpec::new(1.0, 2.0),
            omega_tilde: CutoffSpec::new(2.0, 3.0),
        }
    }
}

impl CutoffTriple {
    pub fn validate(&self) -> Result<(), NumericsError> {
        self.omega.validate()?;
        self.omega_tilde_prime.validate()?;
        self.omega_tilde.validate()?;
        if self.omega_tilde.inner < self.omega.outer {
            return Err(NumericsError::BadCutoff("ω̃ must equal 1 on the support of ω".into()));
        }
        Ok(())
    }

    /// Three distinct admissible triples, used for the cut-off variation spread.
    pub fn variations() -> [CutoffTriple; 3] {
        [
            CutoffTriple::default(),
            CutoffTriple {
                omega: CutoffSpec::new(0.5, 1.5),
                omega_tilde_prime: CutoffSpec::new(0.8, 2.5),
                omega_tilde: CutoffSpec::new(1.6, 4.0),
            },
            CutoffTriple {
                omega: CutoffSpec { inner: 1.2, outer: 3.0, smoothness: 6 },
                omega_tilde_prime: CutoffSpec::new(1.0, 1.7),
                omega_tilde: CutoffSpec { inner: 3.0, outer: 3.5, smoothness: 3 },
            },
        ]
    }

    pub fn omega_doubleprime(&self) -> RadialProfile {
        self.omega_tilde_prime.profile().mul(&self.omega.profile())
    }

    fn knots(&self) -> Vec<f64> {
        [&self.omega, &self.omega_tilde_prime, &self.omega_tilde].iter().flat_map(|c| [c.inner, c.outer]).collect()
    }
}

/// `(M f)(w) = ∫₀^R r^{w−1} f(r) dr` with `R` the spec's upper radius.
pub fn mellin(f: &RadialProfile, w: Complex64, q: &QuadratureSpec) -> Result<Complex64, NumericsError> {
    let breaks = [1e-3, 1e-2, 0.1, 1.0, 10.0];
    let kernel = |r: f64| ((w - 1.0) * r.ln()).exp() * f.eval(r);
    let re = integrate(|r| kernel(r).re, 0.0, q.upper_radius, &breaks, q)?;
    let im = integrate(|r| kernel(r).im, 0.0, q.upper_radius, &breaks, q)?;
    Ok(Complex64::new(re.value, im.value))
}

/// Weighted transform on the line `Re w = ½ − γ`, at height `τ`.
pub fn weighted_mellin(
    f: &RadialProfile,
    gamma: f64,
    tau: f64,
    q: &QuadratureSpec,
) -> Result<Complex64, NumericsError> {
    mellin(f, Complex64::new(0.5 - gamma, tau), q)
}

/// `½(θ² − θ − l(l+1)) f` pointwise.
pub fn apply_h0(f: &RadialProfile, l: Channel) -> impl Fn(f64) -> f64 + Send + Sync + '_ {
    let ll = (l.0 * (l.0 + 1)) as f64;
    move |r| {
        let [v, t1, t2] = f.jet(r);
        0.5 * (t2 - t1 - ll * v)
    }
}

/// Value of one canonical component at its point, for the channel-`l` radial part `u`.
#[allow(clippy::too_many_arguments)]
pub fn component_value(
    u: &RadialProfile,
    l: Channel,
    marker: CanonicalMarker,
    z: f64,
    e: f64,
    cut: &CutoffTriple,
    q: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    cut.validate()?;
    let wpp = cut.omega_doubleprime();
    let tilde_u = cut.omega_tilde.profile().mul(u);
    let h0 = apply_h0(&tilde_u, l);
    let p = marker.point as i32;
    let b = marker.derivative_order as i32;
    let weight = move |r: f64| r.powi(p - 1) * r.ln().powi(b);
    let breaks = cut.knots();
    let inner_end = cut.omega.outer.min(cut.omega_tilde_prime.outer);
    let outer_end = cut.omega_tilde.outer;
    let est = match marker.component {
        Component::OuterH0 => integrate(|r| weight(r) * (wpp.eval(r) - 1.0) * h0(r), 0.0, outer_end, &breaks, q)?,
        Component::OuterZr => {
            integrate(|r| weight(r) * (wpp.eval(r) - 1.0) * z * r * tilde_u.eval(r), 0.0, outer_end, &breaks, q)?
        }
        Component::OuterEr2 => {
            integrate(|r| weight(r) * (wpp.eval(r) - 1.0) * e * r * r * tilde_u.eval(r), 0.0, outer_end, &breaks, q)?
        }
        Component::InnerZr => integrate(|r| weight(r) * wpp.eval(r) * z * r * u.eval(r), 0.0, inner_end, &breaks, q)?,
        Component::InnerEr2 => {
            integrate(|r| weight(r) * wpp.eval(r) * e * r * r * u.eval(r), 0.0, inner_end, &breaks, q)?
        }
    };
    Ok(est.value)
}

/// Numerical value of an assembled `Q_l` at `(Z, E)`.
pub fn evaluate_functional(
    functional: &QFunctional,
    u: &RadialProfile,
    z: f64,
    e: f64,
    cut: &CutoffTriple,
    q: &QuadratureSpec,
    exec: Exec,
) -> Result<f64, NumericsError> {
    let l = functional.channel;
    let denom = z.powi(functional.z_power as i32);
    let items: Vec<_> = functional.numerators.iter().map(|(m, c)| (*m, c.eval_f64(z, e))).collect();
    let parts = exec.map(items, |(m, c)| component_value(u, l, m, z, e, cut, q).map(|v| c * v));
    let mut total = 0.0;
    for p in parts {
        total += p?;
    }
    Ok(total / denom)
}

fn cm(point: i64, component: Component) -> CanonicalMarker {
    CanonicalMarker { point, component, derivative_order: 0 }
}

/// `Q₀(u) = −2[(M(ω''−1) op(h₀)(ω̃u))(0) + (M ω''(rZ + r²E)u)(0)]`.
pub fn q0_value(
    u: &RadialProfile,
    z: f64,
    e: f64,
    cut: &CutoffTriple,
    q: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    let l = Channel(0);
    let mut s = 0.0;
    for c in [Component::OuterH0, Component::InnerZr, Component::InnerEr2] {
        s += component_value(u, l, cm(0, c), z, e, cut, q)?;
    }
    Ok(-2.0 * s)
}

/// `Q₁(u) = −⅔Z⁻¹[(M(ω''−1) op(h₀ + Zr)(ω̃u))(−1) + (M ω'' r²E u)(−1)]
///          − ⅔[(M(ω''−1) op(h₀)(ω̃u))(0) + (M ω''(rZ + r²E)u)(0)]`.
pub fn q1_value(
    u: &RadialProfile,
    z: f64,
    e: f64,
    cut: &CutoffTriple,
    q: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    let l = Channel(1);
    let mut first = 0.0;
    for c in [Component::OuterH0, Component::OuterZr, Component::InnerEr2] {
        first += component_value(u, l, cm(-1, c), z, e, cut, q)?;
    }
    let mut second = 0.0;
    for c in [Component::OuterH0, Component::InnerZr, Component::InnerEr2] {
        second += component_value(u, l, cm(0, c), z, e, cut, q)?;
    }
    Ok(-2.0 / 3.0 * first / z - 2.0 / 3.0 * second)
}

/// Max relative deviation of `−series_l(r)·Q_l(u)` from the bound state
/// `u = R_{nl}` over `r_samples`, with the series carried to `r^{l+k}`.
#[allow(clippy::too_many_arguments)]
pub fn end_to_end_check(
    n: u32,
    l: u32,
    z: f64,
    k: u32,
    r_samples: &[f64],
    cut: &CutoffTriple,
    q: &QuadratureSpec,
    exec: Exec,
) -> Result<f64, NumericsError> {
    if l >= n {
        return Err(NumericsError::BadSpec(format!("bound state requires l < n (n = {n}, l = {l})")));
    }
    let g = assemble(&WeightData::new(rat(1, 1)), l + k, l)?;
    let group = g.group(l).expect("channel within order");
    let (series, functional) = group.factored.clone().map_err(|f| NumericsError::NotFactorized(f.to_string()))?;
    let e = -z * z / (2.0 * (n * n) as f64);
    let u = RadialProfile::hydrogen_radial(n, l, z);
    let qv = evaluate_functional(&functional, &u, z, e, cut, q, exec)?;
    let mut worst: f64 = 0.0;
    for &r in r_samples {
        let approx = -series.eval_f64(r, z, e) * qv;
        let exact = u.eval(r);
        worst = worst.max(((approx - exact) / exact).abs());
    }
    Ok(worst)
}
