use std::fmt;
use std::sync::Arc;

type Jet = dyn Fn(f64) -> [f64; 3] + Send + Sync;

/// A radial function on `(0, ∞)` together with `θf` and `θ²f`, `θ = −r d/dr`.
#[derive(Clone)]
pub struct RadialProfile {
    jet: Arc<Jet>,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RadialProfile")
    }
}

impl RadialProfile {
    pub fn from_jet(jet: impl Fn(f64) -> [f64; 3] + Send + Sync + 'static) -> Self {
        RadialProfile { jet: Arc::new(jet) }
    }

    pub fn zero() -> Self {
        RadialProfile::from_jet(|_| [0.0; 3])
    }

    /// `r^m`, with `θ r^m = −m r^m`.
    pub fn power(m: i32) -> Self {
        let m = m as f64;
        RadialProfile::from_jet(move |r| {
            let v = r.powf(m);
            [v, -m * v, m * m * v]
        })
    }

    /// `Σ c·r^m · e^{−a r}` over `(c, m)` pairs.
    pub fn poly_exp(terms: Vec<(f64, i32)>, a: f64) -> Self {
        RadialProfile::from_jet(move |r| {
            let e = (-a * r).exp();
            let mut out = [0.0; 3];
            for &(c, m) in &terms {
                let v = c * r.powi(m) * e;
                let s = m as f64 - a * r;
                out[0] += v;
                out[1] -= s * v;
                out[2] += (s * s - a * r) * v;
            }
            out
        })
    }

    /// Hydrogen radial function `r^l e^{−Zr/n} Σ a_k r^k` normalized by `a_0 = 1`.
    pub fn hydrogen_radial(n: u32, l: u32, z: f64) -> Self {
        assert!(l < n, "bound state requires l < n");
        let (n, l) = (n as i32, l as i32);
        let mut terms = Vec::new();
        let mut a = 1.0;
        for k in 0..n - l {
            terms.push((a, l + k));
            a *= (2.0 * z / n as f64) * (k + l + 1 - n) as f64 / ((k + 1) * (k + 2 * l + 2)) as f64;
        }
        RadialProfile::poly_exp(terms, z / n as f64)
    }

    pub fn jet(&self, r: f64) -> [f64; 3] {
        (self.jet)(r)
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.jet(r)[0]
    }

    pub fn theta(&self, r: f64) -> f64 {
        self.jet(r)[1]
    }

    pub fn theta2(&self, r: f64) -> f64 {
        self.jet(r)[2]
    }

    pub fn scale(&self, c: f64) -> Self {
        let f = self.clone();
        RadialProfile::from_jet(move |r| f.jet(r).map(|x| c * x))
    }

    pub fn add(&self, other: &RadialProfile) -> Self {
        let (f, g) = (self.clone(), other.clone());
        RadialProfile::from_jet(move |r| {
            let (a, b) = (f.jet(r), g.jet(r));
            [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
        })
    }

    /// Product, via `θ²(fg) = θ²f·g + 2θf·θg + f·θ²g`.
    pub fn mul(&self, other: &RadialProfile) -> Self {
        let (f, g) = (self.clone(), other.clone());
        RadialProfile::from_jet(move |r| {
            let (a, b) = (f.jet(r), g.jet(r));
            [a[0] * b[0], a[1] * b[0] + a[0] * b[1], a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2]]
        })
    }

    /// Largest relative mismatch of `θf`, `θ²f` against five-point differences at `r`.
    pub fn fd_check(&self, r: f64) -> f64 {
        let h = 1e-3 * r;
        let f = |x: f64| self.eval(x);
        let d1 = (f(r - 2.0 * h) - 8.0 * f(r - h) + 8.0 * f(r + h) - f(r + 2.0 * h)) / (12.0 * h);
        let d2 = (-f(r - 2.0 * h) + 16.0 * f(r - h) - 30.0 * f(r) + 16.0 * f(r + h) - f(r + 2.0 * h)) / (12.0 * h * h);
        let [v, t1, t2] = self.jet(r);
        let fd1 = -r * d1;
        let fd2 = r * d1 + r * r * d2;
        let scale = v.abs().max(t1.abs()).max(t2.abs()).max(f64::MIN_POSITIVE);
        ((t1 - fd1).abs() / scale).max((t2 - fd2).abs() / scale)
    }
}
