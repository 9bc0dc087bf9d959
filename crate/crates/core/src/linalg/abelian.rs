use std::collections::BTreeMap;

use serde::Serialize;

/// Factors `p^e` of `n` in increasing prime order.
pub(crate) fn prime_powers(mut n: u64) -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
                e += 1;
            }
            out.push((p, q, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n, 1));
    }
    out
}

/// Rewrites a direct sum of cyclic groups `⊕ ℤ/d_i` (each with a generator) into invariant
/// factor form `d₁ | d₂ | …` (ascending, all ≥ 2) with matching generators.
pub fn canonical_decomposition<T: Clone>(
    cyclic: Vec<(u64, T)>,
    scale: impl Fn(&T, u64) -> T,
    add: impl Fn(&T, &T) -> T,
) -> Vec<(u64, T)> {
    let mut by_prime: BTreeMap<u64, Vec<(u64, T)>> = BTreeMap::new();
    for (d, v) in cyclic {
        if d <= 1 {
            continue;
        }
        for (p, q, _) in prime_powers(d) {
            by_prime.entry(p).or_default().push((q, scale(&v, d / q)));
        }
    }
    for comps in by_prime.values_mut() {
        comps.sort_by(|a, b| b.0.cmp(&a.0));
    }
    let count = by_prime.values().map(|c| c.len()).max().unwrap_or(0);
    let mut out: Vec<(u64, T)> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc: Option<(u64, T)> = None;
        for comps in by_prime.values() {
            if let Some((q, v)) = comps.get(k) {
                acc = Some(match acc {
                    None => (*q, v.clone()),
                    Some((d, w)) => (d * q, add(&w, v)),
                });
            }
        }
        out.push(acc.expect("non-empty level"));
    }
    out.reverse();
    out
}

/// A finite abelian group in invariant factor form, with representatives for the
/// generators in whatever coordinates produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianStructure {
    pub factors: Vec<u64>,
    #[serde(skip)]
    pub generators: Vec<Vec<u64>>,
    #[serde(skip)]
    pub modulus: u64,
}

impl AbelianStructure {
    pub fn trivial() -> Self {
        AbelianStructure {
            factors: Vec::new(),
            generators: Vec::new(),
            modulus: 1,
        }
    }

    /// Builds from cyclic summands whose generators are vectors mod `modulus`.
    pub fn from_cyclic(cyclic: Vec<(u64, Vec<u64>)>, modulus: u64) -> Self {
        let m = modulus;
        let canon = canonical_decomposition(
            cyclic,
            |v, k| v.iter().map(|&x| (x as u128 * k as u128 % m as u128) as u64).collect(),
            |a, b| a.iter().zip(b).map(|(&x, &y)| (x + y) % m).collect(),
        );
        AbelianStructure {
            factors: canon.iter().map(|c| c.0).collect(),
            generators: canon.into_iter().map(|c| c.1).collect(),
            modulus,
        }
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}
