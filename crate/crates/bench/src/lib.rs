//! Fixtures shared by the benchmarks.

use morita_core::cohomology::{Cochain, Coinduced};
use morita_core::pointed::ModuleCategory;
use morita_core::{FiniteGroup, PointedCategory, Subgroup};

/// `M(H, 0)` over `Vec(G)`.
pub fn plain_module(g: &FiniteGroup, elements: &[usize]) -> ModuleCategory {
    let c = PointedCategory::untwisted(g);
    let h = Subgroup::new(g, elements).expect("subgroup");
    let mu0 = Cochain::zero(Coinduced::new(g, &h).subgroup_module(), 2, 1);
    ModuleCategory::from_local(&c, &h, &mu0).expect("module category")
}

/// `(G', ϖ)` for the dual of `Vec(G)` with respect to `M(H, 0)`.
pub fn dual_category(g: &FiniteGroup, elements: &[usize]) -> PointedCategory {
    let d = morita_core::duality::dual_pointed_category(&plain_module(g, elements)).expect("pointed dual");
    PointedCategory::new(d.group().clone(), d.varpi.clone()).expect("3-cocycle")
}

/// A deterministic dense integer matrix with entries in `-9..=9`.
pub fn sample_matrix(rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|i| (0..cols).map(|j| ((i * 7 + j * 13 + i * j) % 19) as i64 - 9).collect())
        .collect()
}
