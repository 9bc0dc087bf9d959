//! The dual of `Vec(G, ω)` with respect to `M(H, μ)` when it is pointed: the pointedness
//! test, `η`, `ν̃`, `ν`, `κ`, the crossed product `Ĥ ⋊_ν K` and `ϖ`, plus two independent
//! constructions (the group `Λ` of invertible module functors and the skeleton associator).

mod crossed;
mod data;
mod oracle;
mod pointedness;

pub use crossed::{dual_pointed_category, dual_pointed_category_with, varpi, CrossedProduct, DualPresentation};
pub use data::{
    character_module, cochain_module, eta_family, eta_family_with, kappa_cocycle, nu, nu_tilde, nu_tilde_value,
    FactorSet,
};
pub use oracle::{check_t_isomorphism, lambda_group, skeleton_associator, LambdaGroup, ORACLE_BOUND};
pub use pointedness::{is_dual_pointed, is_dual_pointed_with, PointednessFailure, PointednessReport};
