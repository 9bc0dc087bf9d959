pub mod catalog;
pub mod cohomology;
pub mod duality;
pub mod error;
pub mod group;
pub mod linalg;
pub mod morita;
pub mod pointed;
pub mod qmodz;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupIso, GroupSpec, Subgroup};
pub use pointed::{ModuleCategory, PointedCategory};
pub use duality::DualPresentation;
pub use morita::{morita_equivalent, MoritaOutcome, MoritaWitness, SearchOptions, Verdict};
pub use qmodz::QmodZ;
