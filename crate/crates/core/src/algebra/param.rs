//! Polynomials in the physical parameters: nuclear charge `Z` and energy `E`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{deserialize_rat, int, rat_gcd, rat_to_f64, serialize_rat, Rat};

/// Exponent pair `Z^z E^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub z: u32,
    pub e: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { z: 0, e: 0 };

    pub fn new(z: u32, e: u32) -> Self {
        Monomial { z, e }
    }

    pub fn degree(self) -> u32 {
        self.z + self.e
    }

    fn divides(self, other: Monomial) -> bool {
        self.z <= other.z && self.e <= other.e
    }
}

/// Sparse polynomial in `Z` and `E` with exact rational coefficients.
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        ParamPoly::monomial(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        ParamPoly::constant(int(n))
    }

    pub fn monomial(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    /// The nuclear charge `Z`.
    pub fn z() -> Self {
        ParamPoly::monomial(Rat::one(), Monomial::new(1, 0))
    }

    /// The energy `E`.
    pub fn e() -> Self {
        ParamPoly::monomial(Rat::one(), Monomial::new(0, 1))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, m: Monomial) -> Rat {
        self.terms.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rat)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, by: Monomial) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (Monomial::new(m.z + by.z, m.e + by.e), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = ParamPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Leading term in lex order (`Z` before `E`).
    fn leading(&self) -> Option<(Monomial, &Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        let (lm, lc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let t = Monomial::new(m.z - lm.z, m.e - lm.e);
            let factor = c / lc;
            rem = &rem - &divisor.mul_monomial(t).scale(&factor);
            quot.add_term(t, factor);
        }
        Some(quot)
    }

    /// Divides every exponent by the monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, by: Monomial) -> Option<ParamPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !by.divides(*m) {
                return None;
            }
            terms.insert(Monomial::new(m.z - by.z, m.e - by.e), c.clone());
        }
        Some(ParamPoly { terms })
    }

    /// Substitutes polynomials for `Z` and `E`.
    pub fn substitute(&self, z: &ParamPoly, e: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let t = (&z.pow(m.z) * &e.pow(m.e)).scale(c);
            out += &t;
        }
        out
    }

    pub fn substitute_e(&self, e: &ParamPoly) -> ParamPoly {
        self.substitute(&ParamPoly::z(), e)
    }

    pub fn eval_f64(&self, z: f64, e: f64) -> f64 {
        self.terms.iter().map(|(m, c)| rat_to_f64(c) * z.powi(m.z as i32) * e.powi(m.e as i32)).sum()
    }

    /// Splits into `content * monomial * primitive`, where `content` is a signed
    /// rational, `monomial` the largest common `Z^a E^b` factor and `primitive`
    /// has coprime integer-like coefficients with a positive leading term.
    pub fn factor_content(&self) -> (Rat, Monomial, ParamPoly) {
        if self.is_zero() {
            return (Rat::zero(), Monomial::ONE, ParamPoly::zero());
        }
        let mut g = rat_gcd(self.terms.values());
        let lead_negative = self.display_order().first().is_some_and(|(_, c)| c.is_negative());
        if lead_negative {
            g = -g;
        }
        let zmin = self.terms.keys().map(|m| m.z).min().unwrap_or(0);
        let emin = self.terms.keys().map(|m| m.e).min().unwrap_or(0);
        let mono = Monomial::new(zmin, emin);
        let inv = g.recip();
        let prim = self.div_monomial(mono).expect("common monomial divides").scale(&inv);
        (g, mono, prim)
    }

    /// Terms ordered for display: higher total degree first, then higher `Z` power.
    fn display_order(&self) -> Vec<(Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.z.cmp(&a.0.z)));
        v
    }

    /// Expanded form, e.g. `Z² − 2E`.
    pub fn to_expanded_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('−');
                }
            } else {
                out.push_str(if neg { " − " } else { " + " });
            }
            let mono = fmt_monomial(m);
            if mono.is_empty() {
                out.push_str(&super::rat::fmt_rat(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else if super::rat::is_integer(&abs) {
                out.push_str(&format!("{}{}", abs.numer(), mono));
            } else {
                out.push_str(&format!("({}){}", super::rat::fmt_rat(&abs), mono));
            }
        }
        out
    }
}

pub fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

pub fn fmt_monomial(m: Monomial) -> String {
    let mut s = String::new();
    for (sym, k) in [("Z", m.z), ("E", m.e)] {
        match k {
            0 => {}
            1 => s.push_str(sym),
            k => {
                s.push_str(sym);
                s.push_str(&superscript(k));
            }
        }
    }
    s
}

/// Factored text form, e.g. `(1/3)(Z² − E)`, `−(1/15)Z(Z² + 2E)`, `−2Z`.
impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (content, mono, prim) = self.factor_content();
        let neg = content.is_negative();
        let abs = content.abs();
        let mono_s = fmt_monomial(mono);
        let prim_is_one = prim.is_one();
        let mut s = String::new();
        if neg {
            s.push('−');
        }
        let needs_paren_content = !super::rat::is_integer(&abs);
        if !abs.is_one() || (prim_is_one && mono_s.is_empty()) {
            if needs_paren_content && !(prim_is_one && mono_s.is_empty()) {
                s.push_str(&format!("({})", super::rat::fmt_rat(&abs)));
            } else {
                s.push_str(&super::rat::fmt_rat(&abs));
            }
        }
        s.push_str(&mono_s);
        if !prim_is_one {
            s.push_str(&format!("({})", prim.to_expanded_string()));
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly[{}]", self.to_expanded_string())
    }
}

impl From<Rat> for ParamPoly {
    fn from(c: Rat) -> Self {
        ParamPoly::constant(c)
    }
}

impl Add<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Sub<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl Mul<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.z + mb.z, ma.e + mb.e), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: ParamPoly) -> ParamPoly { (&self).$method(&rhs) }
        }
        impl $tr<&ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: &ParamPoly) -> ParamPoly { (&self).$method(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[derive(Serialize, Deserialize)]
struct TermRepr {
    z: u32,
    e: u32,
    #[serde(serialize_with = "serialize_rat", deserialize_with = "deserialize_rat")]
    coeff: Rat,
}

/// Serialized as a list of `{z, e, coeff: {num, den}}` monomials.
impl Serialize for ParamPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self.terms.iter().map(|(m, c)| TermRepr { z: m.z, e: m.e, coeff: c.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        Ok(ParamPoly::from_terms(v.into_iter().map(|t| (Monomial::new(t.z, t.e), t.coeff))))
    }
}
