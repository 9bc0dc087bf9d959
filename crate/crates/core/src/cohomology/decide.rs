use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::cochain::{tuple_at, tuple_count, Cochain};
use super::complex::{is_coboundary_with, Budget, CohomologyGroup};
use super::module::{CoefModule, ModuleKind};
use crate::error::{Error, Result};
use crate::group::{sylow_subgroup, AbelianBasis, FiniteGroup, Subgroup};
use crate::linalg::AbelianStructure;
use crate::qmodz::QmodZ;

/// Outcome of a class test that may fall back to restrictions.
#[derive(Clone, Debug)]
pub enum Triviality {
    Trivial { witness: Option<Cochain> },
    /// The restriction to this subgroup (ambient indices) is already nontrivial.
    Nontrivial { subgroup: Vec<usize> },
    Inconclusive { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrivialityKind {
    Trivial,
    Nontrivial,
    Inconclusive,
}

impl Triviality {
    pub fn kind(&self) -> TrivialityKind {
        match self {
            Triviality::Trivial { .. } => TrivialityKind::Trivial,
            Triviality::Nontrivial { .. } => TrivialityKind::Nontrivial,
            Triviality::Inconclusive { .. } => TrivialityKind::Inconclusive,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Triviality::Trivial { .. })
    }
}

/// Restriction of a cochain to a subgroup (the module restricted, tuples reindexed locally).
pub fn restrict(f: &Cochain, sub: &Subgroup) -> Cochain {
    let module = Arc::new(f.module().restrict(sub));
    let n = sub.order();
    let d = module.dim();
    let deg = f.degree();
    let mut values = Vec::with_capacity(tuple_count(n, deg) * d);
    let mut img = vec![0; deg];
    for i in 0..tuple_count(n, deg) {
        let t = tuple_at(n, deg, i);
        for (x, &y) in img.iter_mut().zip(&t) {
            *x = sub.elements()[y];
        }
        for k in 0..d {
            values.push(f.residue(&img, k));
        }
    }
    Cochain::from_residues(&module, deg, f.modulus(), values).expect("same module shape")
}

fn dense_fits(f: &Cochain, budget: &Budget) -> bool {
    let n = f.group_order();
    let d = f.module().dim();
    let rows = tuple_count(n, f.degree()) * d;
    let cols = tuple_count(n, f.degree().saturating_sub(1)) * d;
    rows.saturating_mul(cols) <= budget.max_entries
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Decides whether the cocycle `f` (degree ≥ 1) is a coboundary. Uses the dense solve when
/// it fits the budget; otherwise a class is trivial iff its restrictions to Sylow subgroups
/// for the primes dividing its order are, and restrictions to cyclic subgroups can certify
/// nontriviality.
pub fn decide_trivial(f: &Cochain, budget: &Budget) -> Result<Triviality> {
    if f.is_zero() {
        return Ok(Triviality::Trivial {
            witness: Some(Cochain::zero(f.module(), f.degree() - 1, 1)),
        });
    }
    let g = f.module().group().clone();
    if let Some(t) = abelian_degree_two(f, &g) {
        return Ok(t);
    }
    if dense_fits(f, budget) {
        return Ok(match is_coboundary_with(f, budget)? {
            Some(w) => Triviality::Trivial { witness: Some(w) },
            None => Triviality::Nontrivial {
                subgroup: (0..g.order()).collect(),
            },
        });
    }
    let order = g.order() as u64;
    let relevant = f.denominator().gcd(&order);
    if relevant == 1 {
        return Ok(Triviality::Trivial { witness: None });
    }
    let mut open = Vec::new();
    for p in prime_divisors(relevant) {
        let sylow = sylow_subgroup(&g, p as usize);
        if sylow.order() == g.order() {
            open.push(p);
            continue;
        }
        match decide_trivial(&restrict(f, &sylow), budget)? {
            Triviality::Trivial { .. } => {}
            Triviality::Nontrivial { subgroup } => {
                return Ok(Triviality::Nontrivial {
                    subgroup: subgroup.iter().map(|&x| sylow.elements()[x]).collect(),
                })
            }
            Triviality::Inconclusive { .. } => open.push(p),
        }
    }
    if open.is_empty() {
        return Ok(Triviality::Trivial { witness: None });
    }
    let mut seen = std::collections::HashSet::new();
    for x in 1..g.order() {
        let c = Subgroup::generated(&g, &[x]);
        if !seen.insert(c.elements().to_vec()) {
            continue;
        }
        let r = restrict(f, &c);
        if !dense_fits(&r, budget) {
            continue;
        }
        if is_coboundary_with(&r, budget)?.is_none() {
            return Ok(Triviality::Nontrivial {
                subgroup: c.elements().to_vec(),
            });
        }
    }
    Ok(Triviality::Inconclusive {
        reason: format!(
            "dense system over {} elements exceeds {} entries and the {:?}-parts could not be reduced",
            g.order(),
            budget.max_entries,
            open
        ),
    })
}

/// For abelian groups with trivial coefficients a degree-2 cocycle is a coboundary iff it is
/// symmetric.
fn abelian_degree_two(f: &Cochain, g: &FiniteGroup) -> Option<Triviality> {
    if f.degree() != 2 || *f.module().kind() != ModuleKind::Trivial || !g.is_abelian() {
        return None;
    }
    for a in 1..g.order() {
        for b in a + 1..g.order() {
            if f.value(&[a, b], 0) != f.value(&[b, a], 0) {
                return Some(Triviality::Nontrivial {
                    subgroup: (0..g.order()).collect(),
                });
            }
        }
    }
    None
}

/// `H²(A, ℚ/ℤ)` for abelian `A` from bicharacters `Σ_{i<j} c_ij·a_i·b_j/gcd(e_i, e_j)`.
pub fn abelian_h2(module: &Arc<CoefModule>) -> Result<CohomologyGroup> {
    let g = module.group();
    if *module.kind() != ModuleKind::Trivial {
        return Err(Error::InvalidParams("bicharacter classes need trivial coefficients".into()));
    }
    let basis = AbelianBasis::new(g)?;
    let e = basis.invariant_factors();
    let exp = basis.exponent().max(1);
    let mut cyc = Vec::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let gij = e[i].gcd(&e[j]);
            let c = Cochain::from_fn(module, 2, |t, _| {
                let (a, b) = (basis.coords(t[0])[i], basis.coords(t[1])[j]);
                QmodZ::new((a * b % gij) as i64, gij)
            })?
            .with_modulus(exp);
            cyc.push((gij, c.residues().to_vec()));
        }
    }
    let structure = AbelianStructure::from_cyclic(cyc, exp);
    let representatives = structure
        .generators
        .iter()
        .map(|v| Cochain::from_residues(module, 2, exp, v.clone()).map(|c| c.reduced()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyGroup::from_parts(structure, representatives, 2, module.clone()))
}
