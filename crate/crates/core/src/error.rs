use thiserror::Error;

use crate::branches::{BranchIndex, IndexedFunction};
use crate::charisma::CharismaKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `z = 0`: the phase is undefined at the branch point.
    #[error("z = 0 is the branch point; the phase is undefined there")]
    BranchPoint,

    #[error("non-finite complex value ({re}, {im})")]
    NonFinite { re: f64, im: f64 },

    #[error("root order must be at least 2, got {0}")]
    InvalidOrder(u32),

    #[error("branch index {k} is not admissible for {function}")]
    IndexOutOfRange {
        k: BranchIndex,
        function: IndexedFunction,
    },

    #[error("charisma `{kind}` is not defined for {function}")]
    Incompatible {
        kind: CharismaKind,
        function: IndexedFunction,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("sheets do not share the same {0}")]
    SheetMismatch(&'static str),

    #[error("branch {0} appears in more than one sheet")]
    DuplicateSheet(BranchIndex),

    #[error("weld tolerance must be finite and non-negative, got {0}")]
    InvalidTolerance(f64),

    #[error("no sheets to assemble")]
    NoSheets,
}

impl Error {
    /// Errors raised by evaluating a function at a point it does not accept.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::BranchPoint | Error::NonFinite { .. } | Error::IndexOutOfRange { .. }
        )
    }
}
