//! Indexed branches of multivalued complex functions and the Riemann surfaces
//! built over their domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`branches`] evaluates `ln_k z` and the `k`-th branch of `z^{1/n}`, and
//!   classifies range values back into branch indices.
//! * [`charisma`] turns a domain point on a given branch into a real height.
//! * [`mesh`] samples a cut-aligned polar grid, lifts one sheet per branch,
//!   and assembles (optionally welded) triangle meshes with a seam report.

pub mod branches;
pub mod charisma;
mod error;
pub mod mesh;

pub use branches::{
    branch_of, in_branch_range, log_branch, principal_phase, root_branch, root_branch_phase,
    BranchIndex, IndexedFunction, Phase,
};
pub use charisma::{evaluate_charisma, CharismaKind, CharismaValue};
pub use error::{Error, Result};
pub use mesh::{
    assemble_surface, build_sheet, sample_domain, seam_report, DomainGrid, RadialSpacing, Seam,
    SeamStats, Sheet, SurfaceMesh, SurfacePoint,
};

/// Complex numbers in both the domain (`z`) and the range (`w`).
pub type ComplexValue = num_complex::Complex64;
