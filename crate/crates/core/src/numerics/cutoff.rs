use super::{NumericsError, RadialProfile};

/// Smooth cut-off: `≡ 1` on `(0, inner]`, `≡ 0` on `[outer, ∞)`, with a
/// polynomial smoothstep of class `C^smoothness` in between.
#[derive(Clone, Debug, PartialEq)]
pub struct CutoffSpec {
    pub inner: f64,
    pub outer: f64,
    pub smoothness: u32,
}

impl Default for CutoffSpec {
    fn default() -> Self {
        CutoffSpec { inner: 1.0, outer: 2.0, smoothness: 4 }
    }
}

impl CutoffSpec {
    pub fn new(inner: f64, outer: f64) -> Self {
        CutoffSpec { inner, outer, ..CutoffSpec::default() }
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if self.inner > 0.0 && self.inner < self.outer && self.outer.is_finite() {
            Ok(())
        } else {
            Err(NumericsError::BadCutoff(format!("need 0 < inner < outer, got ({}, {})", self.inner, self.outer)))
        }
    }

    /// Coefficients of the smoothstep `S(t)` in ascending powers of `t`.
    fn smoothstep(&self) -> Vec<f64> {
        let n = self.smoothness as usize;
        let mut c = vec![0.0; 2 * n + 2];
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            c[n + 1 + k] = sign * binom(n + k, k) * binom(2 * n + 1, n - k);
        }
        c
    }

    /// `(ω, dω/dr, d²ω/dr²)` at `r`.
    pub fn derivatives(&self, r: f64) -> [f64; 3] {
        if r <= self.inner {
            return [1.0, 0.0, 0.0];
        }
        if r >= self.outer {
            return [0.0, 0.0, 0.0];
        }
        let width = self.outer - self.inner;
        let t = (r - self.inner) / width;
        let c = self.smoothstep();
        let (mut s, mut ds, mut dds) = (0.0, 0.0, 0.0);
        for (k, ck) in c.iter().enumerate().filter(|(_, ck)| **ck != 0.0) {
            let k = k as i32;
            s += ck * t.powi(k);
            ds += ck * k as f64 * t.powi(k - 1);
            dds += ck * (k * (k - 1)) as f64 * t.powi(k - 2);
        }
        [1.0 - s, -ds / width, -dds / (width * width)]
    }

    pub fn value(&self, r: f64) -> f64 {
        self.derivatives(r)[0]
    }

    /// The cut-off as a profile, `θ = −r d/dr` applied analytically.
    pub fn profile(&self) -> RadialProfile {
        let spec = self.clone();
        RadialProfile::from_jet(move |r| {
            let [w, d1, d2] = spec.derivatives(r);
            [w, -r * d1, r * d1 + r * r * d2]
        })
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
