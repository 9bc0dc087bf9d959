use std::sync::Arc;

use super::cochain::Cochain;
use super::complex::{Budget, CohomologyGroup};
use super::decide::{decide_trivial, Triviality};
use super::module::{CoefModule, ModuleKind};
use crate::error::{Error, Result};
use crate::group::{CosetSpace, FiniteGroup, SectionRule, Subgroup};
use crate::qmodz::QmodZ;

/// The coinduced module `C = Fun(H\G, ℚ/ℤ)` with the coset data it was built from.
#[derive(Clone, Debug)]
pub struct Coinduced {
    group: FiniteGroup,
    cosets: CosetSpace,
    module: Arc<CoefModule>,
    local: Arc<CoefModule>,
}

impl Coinduced {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        Self::with_rule(g, h, SectionRule::Smallest)
    }

    pub fn with_rule(g: &FiniteGroup, h: &Subgroup, rule: SectionRule) -> Self {
        let cosets = CosetSpace::with_rule(g, h, rule);
        let module = Arc::new(CoefModule::coinduced(g, &cosets));
        let local = Arc::new(CoefModule::trivial(&h.as_group(g)));
        Coinduced {
            group: g.clone(),
            cosets,
            module,
            local,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.cosets.subgroup()
    }

    pub fn module(&self) -> &Arc<CoefModule> {
        &self.module
    }

    /// `ℚ/ℤ` over `H`, indexed locally (`i` stands for the `i`-th smallest element of `H`).
    pub fn subgroup_module(&self) -> &Arc<CoefModule> {
        &self.local
    }

    fn local(&self, h: usize) -> usize {
        self.subgroup().local_index(h).expect("element of the subgroup")
    }

    fn ambient(&self, i: usize) -> usize {
        self.subgroup().elements()[i]
    }

    /// `φ₁(ρ)(g)(x) = ρ(κ(x, g))` for a function `ρ` on the ambient elements of `H`.
    pub fn phi1(&self, rho: impl Fn(usize) -> QmodZ) -> Result<Cochain> {
        Cochain::from_fn(&self.module, 1, |t, x| rho(self.cosets.kappa(x, t[0])))
    }

    /// `ψ₁(γ)(h) = γ(h)(1)`, listed over `H` in local order.
    pub fn psi1(&self, gamma: &Cochain) -> Result<Vec<QmodZ>> {
        self.check(gamma, 1)?;
        Ok(self
            .subgroup()
            .elements()
            .iter()
            .map(|&h| gamma.value(&[h], 0))
            .collect())
    }

    /// `φ(μ)(g₁, g₂)(x) = μ(κ(x, g₁), κ(x ◁ g₁, g₂))` for a 2-cochain on `H`.
    pub fn phi(&self, mu: &Cochain) -> Result<Cochain> {
        if mu.degree() != 2 || mu.group_order() != self.subgroup().order() {
            return Err(Error::Dimension("φ takes a 2-cochain on the subgroup".into()));
        }
        let cs = &self.cosets;
        Cochain::from_fn(&self.module, 2, |t, x| {
            let k1 = cs.kappa(x, t[0]);
            let k2 = cs.kappa(cs.act(x, t[0]), t[1]);
            mu.value(&[self.local(k1), self.local(k2)], 0)
        })
    }

    /// `ψ(γ)(h₁, h₂) = γ(h₁, h₂)(1)`, a 2-cochain on `H`.
    pub fn psi(&self, gamma: &Cochain) -> Result<Cochain> {
        self.check(gamma, 2)?;
        let r = Cochain::from_fn(&self.local, 2, |t, _| {
            gamma.value(&[self.ambient(t[0]), self.ambient(t[1])], 0)
        })?;
        Ok(r)
    }

    /// `ˣγ(g…)(y) = γ(g…)(p(u(x)u(y)))` for a coset `x` fixed by `H`.
    pub fn translate(&self, gamma: &Cochain, x: usize) -> Result<Cochain> {
        if !Arc::ptr_eq(gamma.module(), &self.module) && gamma.module().dim() != self.module.dim() {
            return Err(Error::Dimension("cochain is not coinduced-valued".into()));
        }
        if x >= self.cosets.len() || !self.subgroup().elements().iter().all(|&h| self.cosets.act(x, h) == x) {
            return Err(Error::NotStable(x));
        }
        let g = &self.group;
        let targets: Vec<usize> = (0..self.cosets.len())
            .map(|y| self.cosets.coset_mul(g, x, y))
            .collect();
        Cochain::from_fn(gamma.module(), gamma.degree(), |t, y| gamma.value(t, targets[y]))
    }

    fn check(&self, gamma: &Cochain, degree: usize) -> Result<()> {
        if gamma.degree() != degree || gamma.module().dim() != self.module.dim() {
            return Err(Error::Dimension(format!("expected a coinduced {degree}-cochain")));
        }
        Ok(())
    }
}

/// `μ^g(h₁, …, hₙ) = μ(g h₁ g⁻¹, …, g hₙ g⁻¹)` for a cochain on a normal subgroup `H`
/// (indexed locally).
pub fn conjugate_cocycle(mu: &Cochain, g: &FiniteGroup, h: &Subgroup, elem: usize) -> Result<Cochain> {
    if !h.is_normal(g) {
        return Err(Error::NotNormal);
    }
    if mu.group_order() != h.order() {
        return Err(Error::Dimension("cochain does not live on the subgroup".into()));
    }
    let map: Vec<usize> = h
        .elements()
        .iter()
        .map(|&x| h.local_index(g.conj(elem, x)).expect("normal"))
        .collect();
    Cochain::from_fn(mu.module(), mu.degree(), |t, k| {
        let tt: Vec<usize> = t.iter().map(|&i| map[i]).collect();
        mu.value(&tt, k)
    })
}

/// Classes of `H²(H, ℚ/ℤ)` fixed by conjugation with every coset representative.
pub fn invariant_classes(h2: &CohomologyGroup, g: &FiniteGroup, h: &Subgroup, budget: &Budget) -> Result<Vec<Cochain>> {
    if !h.is_normal(g) {
        return Err(Error::NotNormal);
    }
    if *h2.module().kind() != ModuleKind::Trivial {
        return Err(Error::InvalidParams("expected classes with trivial coefficients".into()));
    }
    let cs = CosetSpace::new(g, h);
    let mut out = Vec::new();
    'classes: for mu in h2.all_classes()? {
        for y in 1..cs.len() {
            let conj = conjugate_cocycle(&mu, g, h, cs.section(y))?;
            match decide_trivial(&conj.sub(&mu)?, budget)? {
                Triviality::Trivial { .. } => {}
                Triviality::Nontrivial { .. } => continue 'classes,
                Triviality::Inconclusive { reason } => return Err(Error::Inconclusive(reason)),
            }
        }
        out.push(mu);
    }
    Ok(out)
}
