use std::sync::Arc;

use serde::Serialize;

use crate::cohomology::{
    coboundary_witnesses, is_cocycle, Budget, Cochain, CoefModule, Coinduced, ModuleKind, Side,
};
use crate::error::{Error, Result};
use crate::group::{CosetSpace, DualGroup, FiniteGroup};
use crate::pointed::ModuleCategory;

/// Solutions `η_y` of `δη_y = ʸμ - μ`, indexed by coset, with `η_1 = 0`.
pub fn eta_family(m: &ModuleCategory) -> Result<Vec<Cochain>> {
    eta_family_with(m, &Budget::default())
}

pub fn eta_family_with(m: &ModuleCategory, budget: &Budget) -> Result<Vec<Cochain>> {
    let c = m.coinduced();
    let k = c.cosets().len();
    let mut rhs = Vec::with_capacity(k.saturating_sub(1));
    for y in 1..k {
        rhs.push(c.translate(m.mu(), y)?.sub(m.mu())?);
    }
    let mut etas = vec![Cochain::zero(c.module(), 1, 1)];
    for (i, w) in coboundary_witnesses(&rhs, budget)?.into_iter().enumerate() {
        let w = w.ok_or_else(|| Error::NotPointed(format!("ʸμ - μ is not a coboundary for coset {}", i + 1)))?;
        etas.push(w.with_module(c.module())?);
    }
    Ok(etas)
}

/// `Z¹(G, C)`-valued coefficients for `ν̃`: coordinates `(g, y)` for `g ≠ 1` and `y ∈ K`,
/// with `K` acting on the right by `(γ ◁ x)(g)(y) = γ(g)(xy)`.
pub fn cochain_module(c: &Coinduced, quotient: &FiniteGroup) -> Arc<CoefModule> {
    let n = c.group().order();
    let k = quotient.order();
    let dim = (n - 1) * k;
    let action = (0..k)
        .map(|x| {
            (0..dim)
                .map(|idx| {
                    let (g, y) = (idx / k, idx % k);
                    vec![(g * k + quotient.mul(x, y), 1)]
                })
                .collect()
        })
        .collect();
    let labels = (0..dim).map(|idx| format!("{}@{}", idx / k + 1, c.module().labels()[idx % k])).collect();
    Arc::new(CoefModule::new_trusted(
        ModuleKind::Cochains,
        Side::Right,
        quotient.clone(),
        vec![0; dim],
        action,
        labels,
    ))
}

/// `ν̃(y₁, y₂) = ʸ²η_{y₁} + η_{y₂} - η_{y₁y₂}`, a right-module 2-cochain on `K` whose values
/// are 1-cocycles in `Z¹(G, C)`. Both properties are checked.
pub fn nu_tilde(m: &ModuleCategory, etas: &[Cochain]) -> Result<Cochain> {
    let c = m.coinduced();
    let quotient = c.cosets().quotient_group();
    let k = quotient.order();
    if etas.len() != k {
        return Err(Error::Dimension(format!("{} η's for {k} cosets", etas.len())));
    }
    let mut values = Vec::with_capacity(k * k);
    for y1 in 0..k {
        for y2 in 0..k {
            let v = c
                .translate(&etas[y1], y2)?
                .add(&etas[y2])?
                .sub(&etas[quotient.mul(y1, y2)])?;
            if !v.is_zero() && !is_cocycle(&v) {
                return Err(Error::Internal(format!("ν̃({y1}, {y2}) is not a 1-cocycle")));
            }
            values.push(v);
        }
    }
    let module = cochain_module(c, &quotient);
    let nt = Cochain::from_fn(&module, 2, |t, idx| {
        let (g, y) = (idx / k + 1, idx % k);
        values[t[0] * k + t[1]].value(&[g], y)
    })?;
    if !is_cocycle(&nt) {
        return Err(Error::Internal("ν̃ violates the right-module cocycle condition".into()));
    }
    Ok(nt)
}

/// `ν̃(y₁, y₂)(g)(y)`.
pub fn nu_tilde_value(nt: &Cochain, y1: usize, y2: usize, g: usize, y: usize) -> crate::QmodZ {
    let k = nt.group_order();
    if g == 0 {
        return crate::QmodZ::ZERO;
    }
    nt.value(&[y1, y2], (g - 1) * k + y)
}

/// `Ĥ` as a right `K`-module: coordinate `k` holds `ρ(gen_k)` and
/// `ρˣ(h) = ρ(u(x)·h·u(x)⁻¹)`.
pub fn character_module(hat: &DualGroup, cs: &CosetSpace, g: &FiniteGroup) -> Result<Arc<CoefModule>> {
    if !cs.is_normal() {
        return Err(Error::NotNormal);
    }
    let quotient = cs.quotient_group();
    let h = hat.subgroup();
    let basis = hat.basis();
    let orders = basis.invariant_factors();
    let gens: Vec<usize> = basis.generators().iter().map(|&l| h.elements()[l]).collect();
    let action = (0..quotient.order())
        .map(|x| {
            let u = cs.section(x);
            gens.iter()
                .map(|&gk| {
                    let moved = h.local_index(g.conj(u, gk)).expect("normal subgroup");
                    basis
                        .coords(moved)
                        .iter()
                        .enumerate()
                        .filter(|(_, &a)| a != 0)
                        .map(|(j, &a)| (j, a as i64))
                        .collect()
                })
                .collect()
        })
        .collect();
    let labels = gens.iter().map(|g| g.to_string()).collect();
    Ok(Arc::new(CoefModule::new_trusted(
        ModuleKind::Dual {
            subgroup: h.elements().to_vec(),
        },
        Side::Right,
        quotient,
        orders,
        action,
        labels,
    )))
}

/// `ν = ψ₁ ∘ ν̃`, a 2-cocycle on `K` with values in the right `K`-module `Ĥ`.
pub fn nu(m: &ModuleCategory, nt: &Cochain, hat: &DualGroup) -> Result<Cochain> {
    let c = m.coinduced();
    let module = character_module(hat, c.cosets(), c.group())?;
    let h = hat.subgroup();
    let gens: Vec<usize> = hat.basis().generators().iter().map(|&l| h.elements()[l]).collect();
    let v = Cochain::from_fn(&module, 2, |t, k| nu_tilde_value(nt, t[0], t[1], gens[k], 0))?;
    if !is_cocycle(&v) {
        return Err(Error::Internal("ν violates the right-module cocycle condition".into()));
    }
    Ok(v)
}

/// `κ(x₁, x₂) = κ(x₁, u(x₂))`, an `H`-valued function on `K × K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSet {
    pub cosets: usize,
    pub values: Vec<usize>,
}

impl FactorSet {
    pub fn get(&self, x1: usize, x2: usize) -> usize {
        self.values[x1 * self.cosets + x2]
    }

    /// Whether `κ` is identically the identity (the section is a homomorphism).
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

pub fn kappa_cocycle(cs: &CosetSpace) -> FactorSet {
    let k = cs.len();
    let values = (0..k * k).map(|i| cs.kappa(i / k, cs.section(i % k))).collect();
    FactorSet { cosets: k, values }
}
