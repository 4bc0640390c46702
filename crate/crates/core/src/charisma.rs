//! Charisma: the real height that lifts a domain point on a given branch off
//! the complex plane.
//!
//! Every kind except [`CharismaKind::Index`] is computed from the range value
//! `w = f_k(z)`, never from `z` directly.

use std::fmt;

use crate::branches::{
    check_point, log_branch, root_branch, root_branch_phase, BranchIndex, IndexedFunction,
};
use crate::{ComplexValue, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharismaKind {
    /// The branch label itself. Sheets are flat and stacked.
    Index,
    /// `ph w`. Continuous across interior branch joins, jumps by `2π` at the
    /// wrap-around join.
    Phase,
    /// `sin(ph w)`, or `Im w` when `use_range_imag` is set.
    Sin { use_range_imag: bool },
    /// `cos(ph w)`.
    Cos,
    /// `Im ln_k z`, the logarithm helix.
    Imag,
}

impl CharismaKind {
    pub const SIN: CharismaKind = CharismaKind::Sin {
        use_range_imag: false,
    };

    /// Index works everywhere, Phase/Sin/Cos need a root and Imag needs the
    /// logarithm.
    pub fn is_compatible(self, f: IndexedFunction) -> bool {
        match self {
            CharismaKind::Index => true,
            CharismaKind::Phase | CharismaKind::Sin { .. } | CharismaKind::Cos => {
                matches!(f, IndexedFunction::Root(_))
            }
            CharismaKind::Imag => matches!(f, IndexedFunction::Log),
        }
    }

    pub fn check_compatible(self, f: IndexedFunction) -> Result<()> {
        if self.is_compatible(f) {
            Ok(())
        } else {
            Err(Error::Incompatible {
                kind: self,
                function: f,
            })
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CharismaKind::Index => "index",
            CharismaKind::Phase => "phase",
            CharismaKind::Sin { .. } => "sin",
            CharismaKind::Cos => "cos",
            CharismaKind::Imag => "imag",
        }
    }
}

impl fmt::Display for CharismaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A charisma ordinate, perpendicular to the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CharismaValue(pub f64);

impl CharismaValue {
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<CharismaValue> for f64 {
    fn from(c: CharismaValue) -> f64 {
        c.0
    }
}

/// Height of `z` on sheet `k` of `f`.
pub fn evaluate_charisma(
    z: ComplexValue,
    k: BranchIndex,
    f: IndexedFunction,
    kind: CharismaKind,
) -> Result<CharismaValue> {
    f.validate()?;
    kind.check_compatible(f)?;
    f.check_index(k)?;
    check_point(z)?;
    let c = match (kind, f) {
        (CharismaKind::Index, _) => k.0 as f64,
        (CharismaKind::Imag, _) => log_branch(z, k)?.im,
        (CharismaKind::Sin { use_range_imag: true }, IndexedFunction::Root(n)) => {
            root_branch(z, n, k)?.im
        }
        (_, IndexedFunction::Root(n)) => {
            let phase = root_branch_phase(z, n, k)?.radians();
            match kind {
                CharismaKind::Phase => phase,
                CharismaKind::Sin { .. } => phase.sin(),
                CharismaKind::Cos => phase.cos(),
                _ => unreachable!("compatibility checked above"),
            }
        }
        (_, IndexedFunction::Log) => unreachable!("compatibility checked above"),
    };
    Ok(CharismaValue(c))
}
