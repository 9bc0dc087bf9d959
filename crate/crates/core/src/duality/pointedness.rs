use serde::Serialize;

use crate::cohomology::{conjugate_cocycle, decide_trivial, Budget, Triviality};
use crate::error::{Error, Result};
use crate::pointed::ModuleCategory;

/// The first condition that keeps the dual from being pointed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum PointednessFailure {
    NotAbelian,
    NotNormal,
    /// `ψ(ʸμ - μ)` is nontrivial for this coset.
    NotInvariant { coset: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointednessReport {
    pub pointed: bool,
    pub failure: Option<PointednessFailure>,
}

impl PointednessReport {
    fn fail(f: PointednessFailure) -> Self {
        PointednessReport {
            pointed: false,
            failure: Some(f),
        }
    }
}

/// Whether the dual of `Vec(G, ω)` with respect to `M(H, μ)` is pointed: `H` abelian, `H`
/// normal, and `ψ(ʸμ - μ)` trivial in `H²(H)` for every coset `y`. For modules given by a
/// cocycle on `H` the invariance of its class is tested as well and must agree.
pub fn is_dual_pointed(m: &ModuleCategory) -> Result<PointednessReport> {
    is_dual_pointed_with(m, &Budget::default())
}

pub fn is_dual_pointed_with(m: &ModuleCategory, budget: &Budget) -> Result<PointednessReport> {
    let g = m.parent().group();
    let h = m.subgroup();
    if !h.is_abelian(g) {
        return Ok(PointednessReport::fail(PointednessFailure::NotAbelian));
    }
    if !h.is_normal(g) {
        return Ok(PointednessReport::fail(PointednessFailure::NotNormal));
    }
    let c = m.coinduced();
    for y in 1..c.cosets().len() {
        let diff = c.translate(m.mu(), y)?.sub(m.mu())?;
        let restricted = settle(decide_trivial(&c.psi(&diff)?, budget)?)?;
        if let Some(mu0) = m.local_mu() {
            let moved = conjugate_cocycle(mu0, g, h, c.cosets().section(y))?;
            let invariant = settle(decide_trivial(&moved.sub(mu0)?, budget)?)?;
            if invariant != restricted {
                return Err(Error::Internal(format!(
                    "restriction and invariance criteria disagree at coset {y}"
                )));
            }
        }
        if !restricted {
            return Ok(PointednessReport::fail(PointednessFailure::NotInvariant { coset: y }));
        }
    }
    Ok(PointednessReport {
        pointed: true,
        failure: None,
    })
}

fn settle(t: Triviality) -> Result<bool> {
    match t {
        Triviality::Trivial { .. } => Ok(true),
        Triviality::Nontrivial { .. } => Ok(false),
        Triviality::Inconclusive { reason } => Err(Error::Inconclusive(reason)),
    }
}
