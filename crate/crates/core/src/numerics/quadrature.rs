//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::NumericsError;

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Semi-infinite integrals are truncated here.
    pub upper_radius: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-12, rel_tol: 1e-11, max_subdivisions: 2000, upper_radius: 80.0 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<(), NumericsError> {
        if self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.upper_radius > 0.0 && self.max_subdivisions > 0 {
            Ok(())
        } else {
            Err(NumericsError::BadSpec("tolerances, radius and subdivision budget must be positive".into()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Estimate {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Estimate { value: kronrod * h, error: ((kronrod - gauss) * h).abs() }
}

struct Piece {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// `∫_a^b f` with the interval first split at `breaks` (those outside are ignored).
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate, NumericsError> {
    spec.validate()?;
    if a >= b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let mut knots: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|x| *x > a && *x < b))
        .chain(std::iter::once(b))
        .collect();
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let mut heap = BinaryHeap::new();
    for w in knots.windows(2) {
        heap.push(Piece { a: w[0], b: w[1], est: gk15(&f, w[0], w[1]) });
    }
    let mut pieces = heap.len();
    loop {
        let (value, error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.est.value, e + p.est.error));
        if !value.is_finite() {
            return Err(NumericsError::NonConvergence { partial: value, error });
        }
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(Estimate { value, error });
        }
        if pieces >= spec.max_subdivisions {
            return Err(NumericsError::NonConvergence { partial: value, error });
        }
        let worst = heap.pop().expect("non-empty");
        let m = 0.5 * (worst.a + worst.b);
        heap.push(Piece { a: worst.a, b: m, est: gk15(&f, worst.a, m) });
        heap.push(Piece { a: m, b: worst.b, est: gk15(&f, m, worst.b) });
        pieces += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_exponentials() {
        let s = QuadratureSpec::default();
        let v = integrate(|x| x * x, 0.0, 3.0, &[], &s).unwrap();
        assert!((v.value - 9.0).abs() < 1e-12);
        let v = integrate(|x| (-x).exp(), 0.0, s.upper_radius, &[1.0], &s).unwrap();
        assert!((v.value - 1.0).abs() < 1e-10);
        let v = integrate(|x| x.sqrt().recip(), 0.0, 1.0, &[], &s).unwrap();
        assert!((v.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let s = QuadratureSpec { max_subdivisions: 3, ..QuadratureSpec::default() };
        let err = integrate(|x| (50.0 * x).sin() / x.sqrt(), 0.0, 10.0, &[], &s).unwrap_err();
        assert!(matches!(err, NumericsError::NonConvergence { .. }));
    }
}
