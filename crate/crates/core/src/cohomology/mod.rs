//! Normalized cochains with coefficients in `ℚ/ℤ`-type modules, coboundaries, cohomology
//! groups, class tests and the Shapiro maps.

mod cochain;
mod complex;
mod decide;
mod json;
mod module;
mod shapiro;

pub use cochain::Cochain;
pub use complex::{
    class_equal, coboundary, coboundary_matrix, coboundary_witnesses, cocycle_violation, cohomology_group, cohomology_group_with,
    is_coboundary, is_coboundary_with, is_cocycle, Budget, CohomologyGroup,
};
pub use decide::{abelian_h2, decide_trivial, restrict, Triviality, TrivialityKind};
pub use json::{cochain_from_json, cochain_to_json};
pub use module::{CoefModule, ModuleKind, Side};
pub use shapiro::{conjugate_cocycle, invariant_classes, Coinduced};

