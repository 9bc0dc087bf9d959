//! Exact linear algebra over ℤ and ℤ/mℤ.

mod abelian;
mod intmat;
mod modular;

pub use abelian::{canonical_decomposition, AbelianStructure};
pub use intmat::{smith_normal_form, IntMatrix, SnfResult};
pub use modular::{cokernel_structure, solve_mod, ModElimination, ModMatrix, ModSolution, Tracking};

use num_integer::Integer;

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd((a % m) as i64, m as i64);
    (g == 1).then(|| s.rem_euclid(m as i64) as u64)
}

/// A unit `u` of ℤ/m with `u·a ≡ gcd(a, m) (mod m)`.
pub fn normalizing_unit(a: u64, m: u64) -> u64 {
    let a = a % m;
    if a == 0 {
        return 1;
    }
    let g = a.gcd(&m);
    let mg = m / g;
    let base = mod_inverse(a / g, mg).expect("coprime after dividing out the gcd");
    let mut u = base;
    while u.gcd(&m) != 1 {
        u += mg;
    }
    u % m
}
