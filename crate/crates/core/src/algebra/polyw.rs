//! Polynomials in the Mellin covariable `w` with [`ParamPoly`] coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::param::ParamPoly;
use super::rat::{fmt_rat, Rat};

/// Dense coefficient list, lowest power first. Trailing zeros are trimmed, so
/// the zero polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyW {
    coeffs: Vec<ParamPoly>,
}

impl PolyW {
    pub fn zero() -> Self {
        PolyW::default()
    }

    pub fn one() -> Self {
        PolyW::constant(ParamPoly::one())
    }

    pub fn constant(c: ParamPoly) -> Self {
        PolyW::new(vec![c])
    }

    pub fn new(coeffs: Vec<ParamPoly>) -> Self {
        let mut p = PolyW { coeffs };
        p.trim();
        p
    }

    /// Polynomial with rational coefficients, lowest power first.
    pub fn from_rats(coeffs: &[Rat]) -> Self {
        PolyW::new(coeffs.iter().cloned().map(ParamPoly::constant).collect())
    }

    /// `w − root`.
    pub fn linear(root: &Rat) -> Self {
        PolyW::from_rats(&[-root.clone(), Rat::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `w`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ParamPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&ParamPoly> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        PolyW::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, q: &Rat) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(q) + c;
        }
        acc
    }

    /// Taylor shift: returns `p(w + n)`.
    pub fn shift(&self, n: &Rat) -> Self {
        if n.is_zero() || self.coeffs.len() < 2 {
            return self.clone();
        }
        // repeated synthetic division (Ruffini-Horner)
        let mut c = self.coeffs.clone();
        let len = c.len();
        for i in 0..len {
            for j in (i..len - 1).rev() {
                let add = c[j + 1].scale(n);
                c[j] = &c[j] + &add;
            }
        }
        PolyW::new(c)
    }

    /// Synthetic division by `(w − root)`: returns quotient and remainder `p(root)`.
    pub fn div_linear(&self, root: &Rat) -> (PolyW, ParamPoly) {
        if self.coeffs.is_empty() {
            return (PolyW::zero(), ParamPoly::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![ParamPoly::zero(); n - 1];
        let mut carry = ParamPoly::zero();
        for k in (0..n).rev() {
            let val = &self.coeffs[k] + &carry.scale(root);
            if k == 0 {
                carry = val;
            } else {
                quot[k - 1] = val.clone();
                carry = val;
            }
        }
        (PolyW::new(quot), carry)
    }

    /// Division by `(w − root)` that must be exact.
    pub fn div_exact_linear(&self, root: &Rat) -> Option<PolyW> {
        let (q, r) = self.div_linear(root);
        r.is_zero().then_some(q)
    }

    /// Division by a monic polynomial with rational coefficients.
    pub fn div_rem_monic(&self, divisor: &PolyW) -> (PolyW, PolyW) {
        let dd = divisor.degree().expect("nonzero divisor");
        debug_assert!(divisor.leading().is_some_and(|c| c.is_one()));
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (PolyW::zero(), PolyW::zero());
        };
        if nd < dd {
            return (PolyW::zero(), self.clone());
        }
        let mut quot = vec![ParamPoly::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let sub = &lead * dc;
                rem[k + j] = &rem[k + j] - &sub;
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        (PolyW::new(quot), PolyW::new(rem))
    }

    pub fn derivative(&self) -> Self {
        PolyW::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
                .collect(),
        )
    }
}

impl Add<&PolyW> for &PolyW {
    type Output = PolyW;
    fn add(self, rhs: &PolyW) -> PolyW {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyW::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub<&PolyW> for &PolyW {
    type Output = PolyW;
    fn sub(self, rhs: &PolyW) -> PolyW {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyW::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Neg for &PolyW {
    type Output = PolyW;
    fn neg(self) -> PolyW {
        PolyW::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&PolyW> for &PolyW {
    type Output = PolyW;
    fn mul(self, rhs: &PolyW) -> PolyW {
        if self.is_zero() || rhs.is_zero() {
            return PolyW::zero();
        }
        let mut out = vec![ParamPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PolyW::new(out)
    }
}

fn fmt_power(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "w".into(),
        k => format!("w^{k}"),
    }
}

/// Expanded text, highest power first: `(1/2)w^2 − (1/2)w − 1`.
impl fmt::Display for PolyW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = fmt_power(k);
            let (neg, body) = match c.as_constant() {
                Some(q) => {
                    let neg = q < Rat::zero();
                    let abs = if neg { -q } else { q };
                    let body = if abs.is_one() && !power.is_empty() {
                        power.clone()
                    } else if power.is_empty() {
                        fmt_rat(&abs)
                    } else if abs.denom().is_one() {
                        format!("{}{}", fmt_rat(&abs), power)
                    } else {
                        format!("({}){}", fmt_rat(&abs), power)
                    };
                    (neg, body)
                }
                None => {
                    // factored display never has a top-level sign past the first char
                    let s = c.to_string();
                    let (neg, body) = match s.strip_prefix('−') {
                        Some(rest) => (true, rest.to_string()),
                        None => (false, s),
                    };
                    let sep = if power.is_empty() { "" } else { "·" };
                    (neg, format!("{body}{sep}{power}"))
                }
            };
            if first {
                if neg {
                    write!(f, "−")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " − " } else { " + " })?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyW[{self}]")
    }
}
