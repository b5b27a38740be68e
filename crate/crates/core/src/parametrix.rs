//! Taylor coefficients `h⁻¹ᵢ(w)` of the parametrix symbol on each channel.
//!
//! They are fixed by requiring that the composed symbol be the identity order
//! by order in `r`:
//!
//! ```text
//! Σ_{j=0}^{min(i,2)} (T^{2−j} h⁻¹_{i−j}) · h_j = δ_{i0}
//! ```
//!
//! which, solved for the newest coefficient, gives
//! `h⁻¹ᵢ = −[Σ_{j=1}^{min(i,2)} (T^{−j} h⁻¹_{i−j}) · h_j] · h₀⁻¹(w − 2)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::algebra::{to_i64, FactoredRationalW};
use crate::channel::{sigma_inverse, Channel, ChannelSymbol};

/// Memo table keyed by `(l, i)`. Each value is written once and never changes.
#[derive(Default)]
pub struct ParametrixCache {
    table: RwLock<HashMap<(u32, u32), Arc<FactoredRationalW>>>,
}

impl ParametrixCache {
    pub fn new() -> Self {
        ParametrixCache::default()
    }

    /// Process-wide cache used by the free functions of this module.
    pub fn global() -> &'static ParametrixCache {
        static CACHE: OnceLock<ParametrixCache> = OnceLock::new();
        CACHE.get_or_init(ParametrixCache::new)
    }

    pub fn coefficient(&self, l: Channel, i: u32) -> Arc<FactoredRationalW> {
        if let Some(v) = self.table.read().expect("cache poisoned").get(&(l.0, i)) {
            return v.clone();
        }
        // fill bottom-up so the recursion depth stays constant
        let mut prev: Vec<Arc<FactoredRationalW>> = Vec::new();
        for k in 0..=i {
            let cached = self.table.read().expect("cache poisoned").get(&(l.0, k)).cloned();
            let value = match cached {
                Some(v) => v,
                None => {
                    let computed = Arc::new(next_coefficient(l, &prev));
                    let mut guard = self.table.write().expect("cache poisoned");
                    guard.entry((l.0, k)).or_insert(computed).clone()
                }
            };
            prev.push(value);
        }
        prev.pop().expect("at least one coefficient")
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Solves the order-`prev.len()` relation given all lower coefficients.
fn next_coefficient(l: Channel, prev: &[Arc<FactoredRationalW>]) -> FactoredRationalW {
    let i = prev.len();
    let inv0 = sigma_inverse(l).shift(-2);
    if i == 0 {
        return inv0;
    }
    let symbol = ChannelSymbol::hydrogen(l);
    let mut acc = FactoredRationalW::zero();
    for j in 1..=i.min(2) {
        let term = prev[i - j].shift(-(j as i64)).mul(&symbol.coefficient(j));
        acc = acc.add(&term);
    }
    acc.mul(&inv0).neg()
}

/// `h⁻¹₀(w) = h₀⁻¹(w − 2) = 2/((w + l − 2)(w − l − 3))`.
pub fn parametrix_order0(l: Channel) -> FactoredRationalW {
    sigma_inverse(l).shift(-2)
}

/// `h⁻¹ᵢ(w)` on channel `l`, memoized in the global cache.
pub fn parametrix_coefficient(l: Channel, i: u32) -> Arc<FactoredRationalW> {
    ParametrixCache::global().coefficient(l, i)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrixCoefficients {
    pub channel: Channel,
    pub coeffs: Vec<FactoredRationalW>,
}

impl ParametrixCoefficients {
    pub fn compute(l: Channel, order: u32) -> Self {
        ParametrixCoefficients {
            channel: l,
            coeffs: (0..=order).map(|i| (*parametrix_coefficient(l, i)).clone()).collect(),
        }
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len().saturating_sub(1) as u32
    }

    /// Exact check of `Σ_j (T^{2−j} h⁻¹_{i−j}) h_j = δ_{i0}` for every stored order.
    pub fn verify(&self) -> Vec<bool> {
        let symbol = ChannelSymbol::hydrogen(self.channel);
        (0..self.coeffs.len())
            .map(|i| {
                let mut lhs = FactoredRationalW::zero();
                for j in 0..=i.min(2) {
                    let t = self.coeffs[i - j].shift(2 - j as i64).mul(&symbol.coefficient(j));
                    lhs = lhs.add(&t);
                }
                let expected = if i == 0 { FactoredRationalW::one() } else { FactoredRationalW::zero() };
                lhs == expected
            })
            .collect()
    }
}

/// Per-order pass/fail of the defining relations up to order `n`.
pub fn verify_defining_relations(l: Channel, n: u32) -> Vec<bool> {
    ParametrixCoefficients::compute(l, n).verify()
}

/// Sorted `(root, multiplicity)` list of `h⁻¹ᵢ` on channel `l`.
pub fn pole_inventory(l: Channel, i: u32) -> Vec<(i64, u32)> {
    parametrix_coefficient(l, i)
        .poles()
        .into_iter()
        .map(|(q, m)| (to_i64(&q).expect("hydrogen poles are integers"), m))
        .collect()
}
