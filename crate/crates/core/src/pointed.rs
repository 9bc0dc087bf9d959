//! Skeletal pointed categories `Vec(G, ω)` and their indecomposable right module
//! categories `M(H, μ)` with `δμ = ω`.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{
    cochain_from_json, cochain_to_json, cocycle_violation, cohomology_group, coboundary, coboundary_witnesses,
    decide_trivial, is_coboundary, restrict, Budget, Cochain, CoefModule, Coinduced, ModuleKind, Triviality,
};
use crate::error::{Error, Result};
use crate::group::{for_each_isomorphism, FiniteGroup, GroupIso, GroupSpec, SectionRule, Subgroup};

/// `Vec(G, ω)` with `ω` a normalized 3-cocycle in `ℚ/ℤ`.
#[derive(Clone, Debug)]
pub struct PointedCategory {
    group: FiniteGroup,
    omega: Cochain,
}

impl PointedCategory {
    pub fn new(group: FiniteGroup, omega: Cochain) -> Result<Self> {
        if omega.degree() != 3 || omega.group_order() != group.order() || omega.module().dim() != 1 {
            return Err(Error::Dimension("ω must be a scalar 3-cochain on the group".into()));
        }
        if *omega.module().kind() != ModuleKind::Trivial {
            return Err(Error::Dimension("ω must have trivial coefficients".into()));
        }
        let module = Arc::new(CoefModule::trivial(&group));
        let omega = omega.with_module(&module)?;
        if let Some(t) = cocycle_violation(&omega) {
            return Err(Error::NotCocycle(t));
        }
        Ok(PointedCategory { group, omega })
    }

    /// `Vec(G)`.
    pub fn untwisted(group: &FiniteGroup) -> Self {
        let module = Arc::new(CoefModule::trivial(group));
        PointedCategory {
            group: group.clone(),
            omega: Cochain::zero(&module, 3, 1),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    pub fn scalar_module(&self) -> &Arc<CoefModule> {
        self.omega.module()
    }

    pub fn is_untwisted(&self) -> bool {
        self.omega.is_zero()
    }

    pub fn fpdim(&self) -> usize {
        self.group.order()
    }

    pub fn to_json(&self) -> Value {
        json!({"group": GroupSpec::from_group(&self.group), "omega": cochain_to_json(&self.omega)})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_value(v.get("group").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Parse(format!("group: {e}")))?;
        let group = spec.build()?;
        match v.get("omega") {
            None | Some(Value::Null) => Ok(Self::untwisted(&group)),
            Some(o) => {
                let module = Arc::new(CoefModule::trivial(&group));
                let omega = cochain_from_json(o, &module)?;
                Self::new(group, omega)
            }
        }
    }
}

/// Outcome of the pentagon check for a skeletal associator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PentagonCheck {
    pub holds: bool,
    pub violation: Option<Vec<usize>>,
}

pub fn check_pentagon(omega: &Cochain) -> PentagonCheck {
    let violation = cocycle_violation(omega);
    PentagonCheck {
        holds: violation.is_none(),
        violation,
    }
}

/// `ω^a = ω ∘ a^{×3}` for an isomorphism `a: G' → G` (the map is indexed by `G'`).
pub fn pullback(omega: &Cochain, a: &GroupIso, target: &FiniteGroup) -> Result<Cochain> {
    omega.pullback(&Arc::new(CoefModule::trivial(target)), &a.map)
}

/// An isomorphism `a: G₂ → G₁` with `ω₁^a` cohomologous to `ω₂`.
pub fn pointed_equivalent(c1: &PointedCategory, c2: &PointedCategory) -> Result<Option<GroupIso>> {
    pointed_equivalent_with(c1, c2, &Budget::default())
}

pub fn pointed_equivalent_with(
    c1: &PointedCategory,
    c2: &PointedCategory,
    budget: &Budget,
) -> Result<Option<GroupIso>> {
    let mut found = None;
    let mut failure = None;
    for_each_isomorphism(c2.group(), c1.group(), |a| {
        let step = pullback(c1.omega(), a, c2.group()).and_then(|p| p.sub(c2.omega()));
        match step.and_then(|d| decide_trivial(&d, budget)) {
            Ok(Triviality::Trivial { .. }) => {
                found = Some(a.clone());
                ControlFlow::Break(())
            }
            Ok(Triviality::Nontrivial { .. }) => ControlFlow::Continue(()),
            Ok(Triviality::Inconclusive { reason }) => {
                failure = Some(Error::Inconclusive(reason));
                ControlFlow::Break(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// `ω` as a constant function on the cosets.
pub fn lift_omega(omega: &Cochain, c: &Coinduced) -> Result<Cochain> {
    Cochain::from_fn(c.module(), 3, |t, _| omega.value(t, 0))
}

/// The right module category `M(H, μ)` over `Vec(G, ω)`.
#[derive(Clone, Debug)]
pub struct ModuleCategory {
    parent: PointedCategory,
    coinduced: Coinduced,
    mu: Cochain,
    local: Option<Cochain>,
}

impl ModuleCategory {
    /// Checks `δμ = ω` with `μ` a normalized coinduced 2-cochain.
    pub fn new(parent: &PointedCategory, h: &Subgroup, mu: Cochain) -> Result<Self> {
        Self::with_rule(parent, h, mu, SectionRule::Smallest)
    }

    pub fn with_rule(parent: &PointedCategory, h: &Subgroup, mu: Cochain, rule: SectionRule) -> Result<Self> {
        let coinduced = Coinduced::with_rule(parent.group(), h, rule);
        if mu.degree() != 2 || mu.module().dim() != coinduced.module().dim() || mu.group_order() != parent.group().order()
        {
            return Err(Error::Dimension("μ must be a coinduced 2-cochain".into()));
        }
        let mu = mu.with_module(coinduced.module())?;
        if coboundary(&mu) != lift_omega(parent.omega(), &coinduced)? {
            return Err(Error::InvalidParams("δμ differs from ω".into()));
        }
        Ok(ModuleCategory {
            parent: parent.clone(),
            coinduced,
            mu,
            local: None,
        })
    }

    /// `M(H, φ(μ₀))` over an untwisted category, for a 2-cocycle `μ₀` on `H`.
    pub fn from_local(parent: &PointedCategory, h: &Subgroup, mu0: &Cochain) -> Result<Self> {
        if !parent.is_untwisted() {
            return Err(Error::InvalidParams("a cocycle on the subgroup describes a module only when ω = 0".into()));
        }
        let coinduced = Coinduced::new(parent.group(), h);
        let mu0 = mu0.with_module(coinduced.subgroup_module())?;
        if let Some(t) = cocycle_violation(&mu0) {
            return Err(Error::NotCocycle(t));
        }
        let mu = coinduced.phi(&mu0)?;
        Ok(ModuleCategory {
            parent: parent.clone(),
            coinduced,
            mu,
            local: Some(mu0),
        })
    }

    /// The same module category presented with another coset section.
    pub fn with_section(&self, rule: SectionRule) -> Result<Self> {
        let mut m = Self::with_rule(&self.parent, self.subgroup(), self.mu.clone(), rule)?;
        m.local = self.local.clone();
        Ok(m)
    }

    pub fn parent(&self) -> &PointedCategory {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.coinduced.subgroup()
    }

    pub fn coinduced(&self) -> &Coinduced {
        &self.coinduced
    }

    pub fn mu(&self) -> &Cochain {
        &self.mu
    }

    /// The cocycle on `H` when the module was built as `φ(μ₀)`.
    pub fn local_mu(&self) -> Option<&Cochain> {
        self.local.as_ref()
    }
}

/// A normalized `μ` with `δμ = ω` (coinduced coefficients), or `None` when `ω|_H` is
/// cohomologically nontrivial. The linear solve and the restriction criterion are both run
/// and must agree.
pub fn solve_module_structure(parent: &PointedCategory, h: &Subgroup) -> Result<Option<Cochain>> {
    solve_module_structure_with(parent, h, &Budget::default())
}

pub fn solve_module_structure_with(parent: &PointedCategory, h: &Subgroup, budget: &Budget) -> Result<Option<Cochain>> {
    let c = Coinduced::new(parent.group(), h);
    if parent.is_untwisted() {
        return Ok(Some(Cochain::zero(c.module(), 2, 1)));
    }
    let restricted = decide_trivial(&restrict(parent.omega(), h), budget)?;
    let lifted = lift_omega(parent.omega(), &c)?;
    let solved = match is_coboundary_budgeted(&lifted, budget) {
        Ok(s) => s,
        Err(Error::SizeBound { .. }) if restricted.kind() != crate::cohomology::TrivialityKind::Inconclusive => {
            return match restricted {
                Triviality::Nontrivial { .. } => Ok(None),
                _ => Err(Error::Inconclusive("module structure exists but the solve exceeds the budget".into())),
            };
        }
        Err(e) => return Err(e),
    };
    match (&restricted, &solved) {
        (Triviality::Trivial { .. }, None) | (Triviality::Nontrivial { .. }, Some(_)) => Err(Error::Internal(
            "module-structure solve disagrees with the restriction criterion".into(),
        )),
        _ => Ok(solved),
    }
}

fn is_coboundary_budgeted(f: &Cochain, budget: &Budget) -> Result<Option<Cochain>> {
    Ok(coboundary_witnesses(std::slice::from_ref(f), budget)?.pop().flatten())
}

/// One module category per class of `L̄_{H,ω}`, in bijection with `H²(H, ℚ/ℤ)`.
#[derive(Clone, Debug)]
pub struct ModuleClassCatalog {
    pub subgroup: Subgroup,
    pub h2_factors: Vec<u64>,
    pub classes: Vec<ModuleCategory>,
}

impl ModuleClassCatalog {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Representatives `μ₀ + φ(μᵢ)` for `μᵢ` running over `H²(H, ℚ/ℤ)`.
pub fn module_class_catalog(parent: &PointedCategory, h: &Subgroup) -> Result<ModuleClassCatalog> {
    let budget = Budget::default();
    let mu0 = solve_module_structure_with(parent, h, &budget)?.ok_or(Error::Obstructed)?;
    let c = Coinduced::new(parent.group(), h);
    let h2 = cohomology_group(c.subgroup_module(), 2)?;
    let locals = h2.all_classes()?;
    let mut classes = Vec::with_capacity(locals.len());
    for (i, m) in locals.iter().enumerate() {
        let phi = c.phi(m)?;
        // φ is additive, so distinct classes amount to φ(μᵢ) ∉ B² for μᵢ ≠ 0
        if i > 0 && is_coboundary(&phi)?.is_some() {
            return Err(Error::Internal("two module structures in the catalog are equivalent".into()));
        }
        let mut cat = ModuleCategory::new(parent, h, mu0.add(&phi)?)?;
        if parent.is_untwisted() {
            cat.local = Some(m.clone());
        }
        classes.push(cat);
    }
    if classes.len() as u64 != h2.order() {
        return Err(Error::Internal("catalog size differs from |H²(H)|".into()));
    }
    Ok(ModuleClassCatalog {
        subgroup: h.clone(),
        h2_factors: h2.factors().to_vec(),
        classes,
    })
}
