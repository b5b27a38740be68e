use num_traits::One;

use super::{AsymptoticTerm, Family, GreenError, MellinMarker};
use crate::algebra::{int, to_i64, FactoredRationalW, ParamPoly, Rat};
use crate::channel::Channel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Upward on the right line, downward on the left: residues count with `+`.
    CounterClockwise,
    Clockwise,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
        }
    }

    fn sign(self) -> Rat {
        match self {
            Orientation::CounterClockwise => Rat::one(),
            Orientation::Clockwise => -Rat::one(),
        }
    }
}

/// Open strip `left < Re w < right` between two contour lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub left: Rat,
    pub right: Rat,
    pub orientation: Orientation,
}

impl Strip {
    /// `left == right` is allowed and encloses nothing.
    pub fn new(left: Rat, right: Rat, orientation: Orientation) -> Result<Self, GreenError> {
        if left > right {
            return Err(GreenError::BadStrip(left, right));
        }
        Ok(Strip { left, right, orientation })
    }

    pub fn counter_clockwise(left: Rat, right: Rat) -> Result<Self, GreenError> {
        Strip::new(left, right, Orientation::CounterClockwise)
    }

    pub fn flipped(&self) -> Self {
        Strip { orientation: self.orientation.flipped(), ..self.clone() }
    }
}

/// Poles of `f` strictly inside the strip; a pole on either line is an error.
pub fn poles_in_strip(f: &FactoredRationalW, s: &Strip) -> Result<Vec<(Rat, u32)>, GreenError> {
    if s.left == s.right {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (q, m) in f.poles() {
        if q == s.left || q == s.right {
            return Err(GreenError::PoleOnContour { line: q.clone(), pole: q });
        }
        if q > s.left && q < s.right {
            out.push((q, m));
        }
    }
    Ok(out)
}

/// Cauchy evaluation of `(1/2πi) ∮ r^{r_offset} r^{−w} f(w) (M v)(w) dw` around `s`.
///
/// A pole `q` of multiplicity `m` with local expansion `f = Σ_n g_n (w−q)^{n−m}`
/// contributes, for `a + b ≤ m − 1`,
/// `(−1)^a / (a! b!) · g_{m−1−a−b} · r^{r_offset−q} ln^a r · (M v)^{(b)}(q)`.
pub fn contour_terms(
    f: &FactoredRationalW,
    s: &Strip,
    r_offset: i64,
    marker_base: MellinMarker,
    l: Channel,
    order: u32,
    family: Family,
) -> Result<Vec<AsymptoticTerm>, GreenError> {
    let sign = s.orientation.sign();
    let mut out = Vec::new();
    for (q, m) in poles_in_strip(f, s)? {
        let point = to_i64(&q).ok_or_else(|| GreenError::NonIntegerPole(q.clone()))?;
        let g = f.local_expansion(&q, m as usize);
        for a in 0..m {
            for b in 0..m - a {
                let idx = (m - 1 - a - b) as usize;
                let mut c = sign.clone() / (factorial(a) * factorial(b));
                if a % 2 == 1 {
                    c = -c;
                }
                let coeff: ParamPoly = g[idx].scale(&c);
                if coeff.is_zero() {
                    continue;
                }
                out.push(AsymptoticTerm {
                    channel: l,
                    order,
                    family,
                    r_power: r_offset - point,
                    log_power: a,
                    coeff,
                    marker: marker_base.at(point, b),
                });
            }
        }
    }
    Ok(out)
}

fn factorial(n: u32) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, k| acc * int(k))
}
