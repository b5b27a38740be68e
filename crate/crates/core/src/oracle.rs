//! Frobenius power series of the hydrogen radial equation.
//!
//! On channel `l` the radial operator is
//! `½(−r∂_r)² − ½(−r∂_r) − ½l(l+1) + rZ + r²E`. Acting on `Σ c_k r^{l+k}` it
//! produces `Σ [½k(k+2l+1)c_k + Z c_{k−1} + E c_{k−2}] r^{l+k}`, so the regular
//! solution with `c_0 = 1` satisfies
//! `c_k = −2(Z c_{k−1} + E c_{k−2}) / (k(k+2l+1))`.

use std::fmt;

use crate::algebra::{int, rat, superscript, ParamPoly, Rat};
use crate::channel::Channel;

/// `Σ_k coefficients[k] · r^{l+k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialSeries {
    pub channel: Channel,
    pub coefficients: Vec<ParamPoly>,
}

impl RadialSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> ParamPoly {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn substitute(&self, z: &ParamPoly, e: &ParamPoly) -> RadialSeries {
        RadialSeries {
            channel: self.channel,
            coefficients: self.coefficients.iter().map(|c| c.substitute(z, e)).collect(),
        }
    }

    /// Numerical value of `Σ c_k r^{l+k}` at `(Z, E)`.
    pub fn eval_f64(&self, r: f64, z: f64, e: f64) -> f64 {
        let l = self.channel.l() as i32;
        self.coefficients.iter().enumerate().map(|(k, c)| c.eval_f64(z, e) * r.powi(l + k as i32)).sum()
    }
}

/// Printed-style rendering, e.g. `1 − Z r + (1/3)(Z² − E) r²`.
impl fmt::Display for RadialSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.channel.l();
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('−') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let power = l + k as u32;
            let r = match power {
                0 => String::new(),
                1 => "r".to_string(),
                p => format!("r{}", superscript(p)),
            };
            let term = match (body.as_str(), r.is_empty()) {
                ("1", true) => "1".to_string(),
                ("1", false) => r,
                (_, true) => body,
                (b, false) if b.contains('/') && !b.starts_with('(') => format!("({body}) {r}"),
                (_, false) => format!("{body} {r}"),
            };
            match (first, neg) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "−{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " − {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("bound state requires l < n (got n = {n}, l = {l})")]
    QuantumNumbers { n: u32, l: u32 },
}

/// Regular Frobenius solution on channel `l` through order `k_max`.
pub fn frobenius_series(l: Channel, k_max: usize) -> RadialSeries {
    let z = ParamPoly::z();
    let e = ParamPoly::e();
    let li = l.l() as i64;
    let mut c: Vec<ParamPoly> = vec![ParamPoly::one()];
    for k in 1..=k_max {
        let mut acc = &z * &c[k - 1];
        if k >= 2 {
            acc += &(&e * &c[k - 2]);
        }
        let ki = k as i64;
        c.push(acc.scale(&rat(-2, ki * (ki + 2 * li + 1))));
    }
    RadialSeries { channel: l, coefficients: c }
}

/// Coefficients of the radial operator applied to `s`, through its order.
pub fn apply_radial_operator(s: &RadialSeries) -> Vec<ParamPoly> {
    let z = ParamPoly::z();
    let e = ParamPoly::e();
    let li = s.channel.l() as i64;
    (0..s.coefficients.len())
        .map(|k| {
            let ki = k as i64;
            let mut r = s.coefficients[k].scale(&rat(ki * (ki + 2 * li + 1), 2));
            if k >= 1 {
                r += &(&z * &s.coefficients[k - 1]);
            }
            if k >= 2 {
                r += &(&e * &s.coefficients[k - 2]);
            }
            r
        })
        .collect()
}

/// `E_n = −Z²/(2n²)`.
pub fn bound_state_energy(n: u32) -> ParamPoly {
    let n = n as i64;
    ParamPoly::z().pow(2).scale(&rat(-1, 2 * n * n))
}

/// Frobenius series at the bound-state energy `E_n`.
pub fn eigenstate_series(n: u32, l: Channel, k_max: usize) -> Result<RadialSeries, OracleError> {
    if n == 0 || l.l() >= n {
        return Err(OracleError::QuantumNumbers { n, l: l.l() });
    }
    Ok(frobenius_series(l, k_max).substitute(&ParamPoly::z(), &bound_state_energy(n)))
}

/// Taylor coefficients of `e^{a Z r}` through `r^{k_max}`.
pub fn exp_series(a: &Rat, k_max: usize) -> Vec<ParamPoly> {
    let mut out = Vec::with_capacity(k_max + 1);
    let mut fact = Rat::from_integer(1.into());
    for k in 0..=k_max {
        if k > 0 {
            fact *= int(k as i64);
        }
        let c = num_traits::pow(a.clone(), k) / &fact;
        out.push(ParamPoly::z().pow(k as u32).scale(&c));
    }
    out
}

/// Multiplies the eigenstate series by `e^{+Zr/n}` and returns the product's
/// coefficients; for a bound state everything from degree `n − l` on vanishes.
pub fn polynomial_part_of_eigenstate(n: u32, l: Channel, k_max: usize) -> Result<Vec<ParamPoly>, OracleError> {
    let s = eigenstate_series(n, l, k_max)?;
    let ex = exp_series(&rat(1, n as i64), k_max);
    Ok((0..=k_max)
        .map(|k| {
            let mut acc = ParamPoly::zero();
            for j in 0..=k {
                acc += &(&s.coefficients[j] * &ex[k - j]);
            }
            acc
        })
        .collect())
}

/// True when every residual coefficient vanishes.
pub fn residual_vanishes(residual: &[ParamPoly]) -> bool {
    residual.iter().all(|c| c.is_zero())
}

/// First order where the residual is nonzero.
pub fn first_nonzero(residual: &[ParamPoly]) -> Option<usize> {
    residual.iter().position(|c| !c.is_zero())
}
