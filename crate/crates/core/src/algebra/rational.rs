//! Rational functions of `w` with a factored denominator `∏ (w − q)^m`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::param::ParamPoly;
use super::polyw::PolyW;
use super::rat::{fmt_rat, Rat};
use super::AlgebraError;

/// `numerator / ∏ (w − q)^m`.
///
/// After every operation the numerator is divided by each denominator factor
/// for as long as the synthetic division is exact, so no denominator root is
/// also a root of the numerator. The zero function has an empty denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredRationalW {
    numerator: PolyW,
    denominator: BTreeMap<Rat, u32>,
}

/// One coefficient of a principal part: `coeff · (w − q)^(−order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalTerm {
    pub order: u32,
    pub coeff: ParamPoly,
}

impl FactoredRationalW {
    pub fn zero() -> Self {
        FactoredRationalW { numerator: PolyW::zero(), denominator: BTreeMap::new() }
    }

    pub fn one() -> Self {
        FactoredRationalW::constant(ParamPoly::one())
    }

    pub fn constant(c: ParamPoly) -> Self {
        FactoredRationalW::from_poly(PolyW::constant(c))
    }

    pub fn from_poly(p: PolyW) -> Self {
        FactoredRationalW { numerator: p, denominator: BTreeMap::new() }
    }

    /// `numerator / ∏ (w − q)^m`, normalized.
    pub fn new(numerator: PolyW, roots: impl IntoIterator<Item = (Rat, u32)>) -> Self {
        let mut denominator = BTreeMap::new();
        for (q, m) in roots {
            if m > 0 {
                *denominator.entry(q).or_insert(0) += m;
            }
        }
        let mut f = FactoredRationalW { numerator, denominator };
        f.normalize();
        f
    }

    /// `c / ∏ (w − q_j)` over simple roots.
    pub fn simple(c: ParamPoly, roots: &[Rat]) -> Self {
        FactoredRationalW::new(PolyW::constant(c), roots.iter().map(|q| (q.clone(), 1)))
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        let roots: Vec<Rat> = self.denominator.keys().cloned().collect();
        for q in roots {
            let mult = self.denominator.get_mut(&q).expect("root present");
            while *mult > 0 {
                match self.numerator.div_exact_linear(&q) {
                    Some(quot) => {
                        self.numerator = quot;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
            if *mult == 0 {
                self.denominator.remove(&q);
            }
        }
    }

    /// Re-runs normalization; a no-op on any value built through this API.
    pub fn normalized(&self) -> Self {
        let mut f = self.clone();
        f.normalize();
        f
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn numerator(&self) -> &PolyW {
        &self.numerator
    }

    /// Denominator roots with multiplicities, ascending.
    pub fn poles(&self) -> Vec<(Rat, u32)> {
        self.denominator.iter().map(|(q, m)| (q.clone(), *m)).collect()
    }

    pub fn multiplicity(&self, q: &Rat) -> u32 {
        self.denominator.get(q).copied().unwrap_or(0)
    }

    pub fn denominator_degree(&self) -> u32 {
        self.denominator.values().sum()
    }

    /// Expanded monic denominator.
    pub fn denominator_poly(&self) -> PolyW {
        let mut d = PolyW::one();
        for (q, m) in &self.denominator {
            for _ in 0..*m {
                d = &d * &PolyW::linear(q);
            }
        }
        d
    }

    /// Decay exponent at infinity: `deg(denominator) − deg(numerator)`.
    pub fn decay_order(&self) -> Option<i64> {
        self.numerator.degree().map(|n| self.denominator_degree() as i64 - n as i64)
    }

    pub fn add(&self, other: &FactoredRationalW) -> FactoredRationalW {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcm = self.denominator.clone();
        for (q, m) in &other.denominator {
            let e = lcm.entry(q.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |f: &FactoredRationalW| {
            let mut n = f.numerator.clone();
            for (q, m) in &lcm {
                for _ in f.multiplicity(q)..*m {
                    n = &n * &PolyW::linear(q);
                }
            }
            n
        };
        let numerator = &lift(self) + &lift(other);
        FactoredRationalW::new(numerator, lcm)
    }

    pub fn neg(&self) -> FactoredRationalW {
        FactoredRationalW { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }

    pub fn sub(&self, other: &FactoredRationalW) -> FactoredRationalW {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FactoredRationalW) -> FactoredRationalW {
        let numerator = &self.numerator * &other.numerator;
        let roots = self.poles().into_iter().chain(other.poles());
        FactoredRationalW::new(numerator, roots)
    }

    pub fn scale(&self, c: &ParamPoly) -> FactoredRationalW {
        FactoredRationalW::new(self.numerator.scale(c), self.poles())
    }

    pub fn mul_poly(&self, p: &PolyW) -> FactoredRationalW {
        FactoredRationalW::new(&self.numerator * p, self.poles())
    }

    /// Mellin shift `Tⁿ`: returns `f(w + n)`; each root `q` moves to `q − n`.
    pub fn shift(&self, n: i64) -> FactoredRationalW {
        self.shift_rat(&Rat::from_integer(n.into()))
    }

    pub fn shift_rat(&self, n: &Rat) -> FactoredRationalW {
        FactoredRationalW {
            numerator: self.numerator.shift(n),
            denominator: self.denominator.iter().map(|(q, m)| (q - n, *m)).collect(),
        }
    }

    /// Exact value at a regular point.
    pub fn eval_at(&self, q: &Rat) -> Result<ParamPoly, AlgebraError> {
        if self.denominator.contains_key(q) {
            return Err(AlgebraError::PoleEvaluation(q.clone()));
        }
        let mut scale = Rat::one();
        for (root, m) in &self.denominator {
            let d = q - root;
            for _ in 0..*m {
                scale /= &d;
            }
        }
        Ok(self.numerator.eval(q).scale(&scale))
    }

    /// Taylor coefficients `g_0 .. g_{count-1}` of `g(t) = t^m f(q + t)` where
    /// `m` is the multiplicity of `q` (zero for a regular point).
    pub fn local_expansion(&self, q: &Rat, count: usize) -> Vec<ParamPoly> {
        if count == 0 {
            return Vec::new();
        }
        let shifted = self.numerator.shift(q);
        let mut series: Vec<ParamPoly> = (0..count).map(|k| shifted.coeff(k)).collect();
        for (root, m) in &self.denominator {
            if root == q {
                continue;
            }
            // 1/(a + t) = Σ (−1)^n t^n / a^(n+1)
            let a = q - root;
            let inv: Vec<Rat> = (0..count)
                .map(|n| {
                    let mut c = Rat::one() / num_traits::pow(a.clone(), n + 1);
                    if n % 2 == 1 {
                        c = -c;
                    }
                    c
                })
                .collect();
            for _ in 0..*m {
                series = mul_truncated(&series, &inv);
            }
        }
        series
    }

    /// Principal part of the Laurent expansion at `q`: coefficients of
    /// `(w − q)^(−k)` for `k = 1..=multiplicity`, or empty at a regular point.
    pub fn principal_part(&self, q: &Rat) -> Vec<PrincipalTerm> {
        let m = self.multiplicity(q);
        if m == 0 {
            return Vec::new();
        }
        let g = self.local_expansion(q, m as usize);
        (1..=m).map(|k| PrincipalTerm { order: k, coeff: g[(m - k) as usize].clone() }).collect()
    }

    /// Residue at `q` (zero at a regular point).
    pub fn residue(&self, q: &Rat) -> ParamPoly {
        self.principal_part(q).into_iter().find(|t| t.order == 1).map(|t| t.coeff).unwrap_or_default()
    }

    /// Polynomial part: the quotient of numerator by the expanded denominator.
    pub fn polynomial_part(&self) -> PolyW {
        self.numerator.div_rem_monic(&self.denominator_poly()).0
    }

    /// Factored display of the denominator, e.g. `(w − 2)(w − 3)^2`.
    pub fn denominator_string(&self) -> String {
        let mut s = String::new();
        for (q, m) in &self.denominator {
            let factor = if q.is_zero() {
                "w".to_string()
            } else if q.is_positive() {
                format!("(w − {})", fmt_rat(q))
            } else {
                format!("(w + {})", fmt_rat(&-q.clone()))
            };
            s.push_str(&factor);
            if *m > 1 {
                s.push_str(&format!("^{m}"));
            }
        }
        s
    }
}

fn mul_truncated(a: &[ParamPoly], b: &[Rat]) -> Vec<ParamPoly> {
    let n = a.len();
    (0..n)
        .map(|k| {
            let mut acc = ParamPoly::zero();
            for j in 0..=k {
                if !b[k - j].is_zero() {
                    acc += &a[j].scale(&b[k - j]);
                }
            }
            acc
        })
        .collect()
}

/// `2/((w − 2)(w − 3))`, `(−4E·w^2 + …)/(…)`.
impl fmt::Display for FactoredRationalW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator.to_string();
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        let den = self.denominator_string();
        let single_factor = self.denominator.len() == 1 && self.denominator_degree() == 1;
        let num_s = if self.numerator.degree() == Some(0) { num } else { format!("({num})") };
        if single_factor {
            write!(f, "{num_s}/{den}")
        } else {
            write!(f, "{num_s}/({den})")
        }
    }
}

impl fmt::Debug for FactoredRationalW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredRationalW[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    fn inv(q: i64) -> FactoredRationalW {
        FactoredRationalW::simple(ParamPoly::one(), &[int(q)])
    }

    #[test]
    fn add_identity_and_cancellation() {
        let f = inv(1);
        assert_eq!(f.add(&FactoredRationalW::zero()), f);
        let g = FactoredRationalW::simple(ParamPoly::int(-1), &[int(0)]);
        assert!(inv(0).add(&g).is_zero());
        assert!(inv(0).add(&g).poles().is_empty());
    }

    #[test]
    fn product_cancels_to_one() {
        // (w−1)/(w−2) · (w−2)/(w−1)
        let a = FactoredRationalW::new(PolyW::linear(&int(1)), [(int(2), 1)]);
        let b = FactoredRationalW::new(PolyW::linear(&int(2)), [(int(1), 1)]);
        assert_eq!(a.mul(&b), FactoredRationalW::one());
    }

    #[test]
    fn shifts_compose() {
        let f = FactoredRationalW::new(PolyW::from_rats(&[int(1), int(3)]), [(int(2), 2), (int(-1), 1)]);
        assert_eq!(f.shift(0), f);
        assert_eq!(f.shift(1).shift(-1), f);
        assert_eq!(f.shift(3).poles()[0].0, int(-4));
    }

    #[test]
    fn evaluation() {
        let f = FactoredRationalW::simple(ParamPoly::int(2), &[int(0), int(1)]);
        assert_eq!(f.eval_at(&int(3)).unwrap(), ParamPoly::constant(rat(1, 3)));
        assert_eq!(FactoredRationalW::one().eval_at(&int(17)).unwrap(), ParamPoly::one());
        assert!(matches!(f.eval_at(&int(1)), Err(AlgebraError::PoleEvaluation(_))));
    }

    #[test]
    fn principal_parts() {
        let double = FactoredRationalW::new(PolyW::one(), [(int(1), 2)]);
        let pp = double.principal_part(&int(1));
        assert_eq!(pp.len(), 2);
        assert_eq!(pp[0], PrincipalTerm { order: 1, coeff: ParamPoly::zero() });
        assert_eq!(pp[1], PrincipalTerm { order: 2, coeff: ParamPoly::one() });

        let regular = FactoredRationalW::new(PolyW::from_rats(&[int(0), int(1)]), [(int(2), 1)]);
        assert!(regular.principal_part(&int(0)).is_empty());

        // w²/(w−1)² = 1 + 2/(w−1) + 1/(w−1)²
        let f = FactoredRationalW::new(PolyW::from_rats(&[int(0), int(0), int(1)]), [(int(1), 2)]);
        let pp = f.principal_part(&int(1));
        assert_eq!(pp[0].coeff, ParamPoly::int(2));
        assert_eq!(pp[1].coeff, ParamPoly::int(1));
        assert_eq!(f.polynomial_part(), PolyW::one());
    }

    #[test]
    fn display() {
        let f = FactoredRationalW::simple(ParamPoly::int(2), &[int(2), int(3)]);
        assert_eq!(f.to_string(), "2/((w − 2)(w − 3))");
        let g = FactoredRationalW::simple(ParamPoly::z().scale(&int(-4)), &[int(-1), int(3), int(3)]);
        assert_eq!(g.to_string(), "−4Z/((w + 1)(w − 3)^2)");
    }
}
