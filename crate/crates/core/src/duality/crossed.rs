use std::sync::Arc;

use serde_json::{json, Value};

use super::data::{eta_family_with, kappa_cocycle, nu, nu_tilde, nu_tilde_value, FactorSet};
use super::pointedness::{is_dual_pointed_with, PointednessFailure};
use crate::catalog::identify;
use crate::cohomology::{
    cochain_to_json, cocycle_violation, decide_trivial, Budget, Cochain, CoefModule, Triviality,
};
use crate::error::{Error, Result};
use crate::group::{dual_group, DualGroup, FiniteGroup, GroupInvariants, GroupSpec};
use crate::pointed::ModuleCategory;

/// `Ĥ ⋊_ν K` with product `(ρ₁, x₁)(ρ₂, x₂) = (ν(x₁, x₂) + ρ₁^{x₂} + ρ₂, x₁x₂)`. The pair
/// `(ρ, x)` has index `ρ + |Ĥ|·x`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    hat: DualGroup,
    quotient: FiniteGroup,
    nu: Vec<usize>,
    twist: Vec<Vec<usize>>,
    table: FiniteGroup,
}

impl CrossedProduct {
    pub fn new(m: &ModuleCategory, hat: &DualGroup, nu_cochain: &Cochain) -> Result<Self> {
        let c = m.coinduced();
        let g = c.group();
        let cs = c.cosets();
        let quotient = cs.quotient_group();
        let k = quotient.order();
        let h = hat.subgroup();
        let gens: Vec<usize> = hat.basis().generators().iter().map(|&l| h.elements()[l]).collect();
        let mut nu = Vec::with_capacity(k * k);
        for x1 in 0..k {
            for x2 in 0..k {
                let idx = hat.from_generator_values(|amb| {
                    let j = gens.iter().position(|&x| x == amb).expect("basis generator");
                    nu_cochain.value(&[x1, x2], j)
                })?;
                nu.push(idx);
            }
        }
        let mut twist = Vec::with_capacity(k);
        for x in 0..k {
            let u = cs.section(x);
            let row = (0..hat.order())
                .map(|rho| hat.pullback(rho, |e| g.conj(u, e)))
                .collect::<Result<Vec<_>>>()?;
            twist.push(row);
        }
        let a = hat.order();
        let hg = hat.group();
        let mul = |p: usize, q: usize| {
            let (r1, x1) = (p % a, p / a);
            let (r2, x2) = (q % a, q / a);
            let r = hg.mul(hg.mul(nu[x1 * k + x2], twist[x2][r1]), r2);
            r + a * quotient.mul(x1, x2)
        };
        let n = a * k;
        let rows: Vec<Vec<usize>> = (0..n).map(|p| (0..n).map(|q| mul(p, q)).collect()).collect();
        let table = FiniteGroup::from_table(&rows)?;
        Ok(CrossedProduct {
            hat: hat.clone(),
            quotient,
            nu,
            twist,
            table,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.table
    }

    pub fn hat(&self) -> &DualGroup {
        &self.hat
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn element(&self, rho: usize, x: usize) -> usize {
        rho + self.hat.order() * x
    }

    pub fn parts(&self, e: usize) -> (usize, usize) {
        (e % self.hat.order(), e / self.hat.order())
    }

    /// `ν(x₁, x₂)` as a character index.
    pub fn nu(&self, x1: usize, x2: usize) -> usize {
        self.nu[x1 * self.quotient.order() + x2]
    }

    /// `ρˣ` as a character index.
    pub fn twist(&self, rho: usize, x: usize) -> usize {
        self.twist[x][rho]
    }

    /// Whether `ν` vanishes identically.
    pub fn is_untwisted(&self) -> bool {
        self.nu.iter().all(|&v| v == 0)
    }
}

/// The pointed dual `Vec(Ĥ ⋊_ν K, ϖ)` together with the data it was assembled from.
#[derive(Clone, Debug)]
pub struct DualPresentation {
    pub module: ModuleCategory,
    pub etas: Vec<Cochain>,
    pub nu_tilde: Cochain,
    pub nu: Cochain,
    pub kappa: FactorSet,
    pub crossed: CrossedProduct,
    pub varpi: Cochain,
}

/// `ϖ((ρ₁,x₁),(ρ₂,x₂),(ρ₃,x₃)) = ν̃(x₁,x₂)(u(x₃))(1) + ρ₁(κ(x₂,x₃))`, checked to be a
/// 3-cocycle.
pub fn varpi(m: &ModuleCategory, nt: &Cochain, kappa: &FactorSet, cp: &CrossedProduct) -> Result<Cochain> {
    let cs = m.coinduced().cosets();
    let module = Arc::new(CoefModule::trivial(cp.group()));
    let w = Cochain::from_fn(&module, 3, |t, _| {
        let (r1, x1) = cp.parts(t[0]);
        let (_, x2) = cp.parts(t[1]);
        let (_, x3) = cp.parts(t[2]);
        nu_tilde_value(nt, x1, x2, cs.section(x3), 0) + cp.hat().eval(r1, kappa.get(x2, x3))
    })?;
    if !w.is_zero() {
        if let Some(t) = cocycle_violation(&w) {
            return Err(Error::Internal(format!("ϖ is not a 3-cocycle at {t:?}")));
        }
    }
    Ok(w)
}

/// Assembles `Ĥ ⋊_ν K` and `ϖ` for a module category whose dual is pointed.
pub fn dual_pointed_category(m: &ModuleCategory) -> Result<DualPresentation> {
    dual_pointed_category_with(m, &Budget::default())
}

pub fn dual_pointed_category_with(m: &ModuleCategory, budget: &Budget) -> Result<DualPresentation> {
    let report = is_dual_pointed_with(m, budget)?;
    if let Some(f) = report.failure {
        let why = match f {
            PointednessFailure::NotAbelian => "the subgroup is not abelian".to_string(),
            PointednessFailure::NotNormal => "the subgroup is not normal".to_string(),
            PointednessFailure::NotInvariant { coset } => format!("μ is not invariant under coset {coset}"),
        };
        return Err(Error::NotPointed(why));
    }
    let c = m.coinduced();
    let hat = dual_group(c.group(), m.subgroup())?;
    let etas = eta_family_with(m, budget)?;
    let nt = nu_tilde(m, &etas)?;
    let nu_c = nu(m, &nt, &hat)?;
    let kappa = kappa_cocycle(c.cosets());
    let crossed = CrossedProduct::new(m, &hat, &nu_c)?;
    if crossed.order() != c.group().order() {
        return Err(Error::Internal("the dual group has the wrong order".into()));
    }
    let w = varpi(m, &nt, &kappa, &crossed)?;
    Ok(DualPresentation {
        module: m.clone(),
        etas,
        nu_tilde: nt,
        nu: nu_c,
        kappa,
        crossed,
        varpi: w,
    })
}

impl DualPresentation {
    pub fn group(&self) -> &FiniteGroup {
        self.crossed.group()
    }

    /// Whether `ϖ` is a coboundary on the crossed product.
    pub fn varpi_triviality(&self, budget: &Budget) -> Result<Triviality> {
        decide_trivial(&self.varpi, budget)
    }

    pub fn report(&self, budget: &Budget) -> Result<Value> {
        let g = self.group();
        let inv = GroupInvariants::of(g)?;
        let trivial = match self.varpi_triviality(budget)? {
            Triviality::Trivial { .. } => Value::Bool(true),
            Triviality::Nontrivial { .. } => Value::Bool(false),
            Triviality::Inconclusive { .. } => Value::Null,
        };
        Ok(json!({
            "group": GroupSpec::from_group(g),
            "varpi": cochain_to_json(&self.varpi),
            "varpi_trivial": trivial,
            "isomorphism_type_hint": {
                "order": inv.order,
                "exponent": inv.exponent,
                "abelian": g.is_abelian(),
                "center_order": inv.center_order,
                "abelianization": inv.abelianization,
                "order_statistics": inv.order_statistics,
                "catalog_name": identify(g)?,
            },
            "subgroup": self.module.subgroup().elements(),
            "kappa_trivial": self.kappa.is_trivial(),
            "nu_trivial": self.crossed.is_untwisted(),
        }))
    }
}
