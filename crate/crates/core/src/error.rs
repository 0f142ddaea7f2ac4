use thiserror::Error;

use crate::linalg::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure classes; the command line maps each to its own exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    /// Input data violates a structural invariant (non-associative table, non-functorial presheaf, ...).
    Invariant,
    /// Input is well formed but an operation's precondition does not hold.
    Precondition,
    /// A configured size or degree cap would be exceeded.
    Cap,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension { context: String, expected: usize, found: usize },

    #[error("structure constants are not associative at basis triple ({i}, {j}, {k})")]
    NonAssociative { i: usize, j: usize, k: usize },

    #[error("unit law fails at basis element {index}")]
    UnitLaw { index: usize },

    #[error("{0}")]
    Invariant(String),

    #[error("{0}")]
    Precondition(String),

    #[error("cochain is not a cocycle: {0}")]
    NotCocycle(String),

    #[error("map is not a section of the projection")]
    NotSection,

    #[error("intersection of {0} does not exist in the site")]
    MissingIntersection(String),

    #[error("degree {degree} outside the declared range with nonzero adjacent spaces")]
    DegreeOutOfRange { degree: i64 },

    #[error("{what} needs {needed} coordinates, over the cap of {cap}")]
    CapExceeded { what: String, needed: usize, cap: usize },

    #[error("caps (p <= {pmax}, q <= {qmax}) do not cover degree {needed}")]
    InsufficientCaps { needed: usize, pmax: usize, qmax: usize },
}

impl Error {
    pub fn category(&self) -> Category {
        match self {
            Error::FieldMismatch { .. }
            | Error::Dimension { .. }
            | Error::NonAssociative { .. }
            | Error::UnitLaw { .. }
            | Error::Invariant(_) => Category::Invariant,
            Error::Precondition(_)
            | Error::NotCocycle(_)
            | Error::NotSection
            | Error::MissingIntersection(_)
            | Error::DegreeOutOfRange { .. } => Category::Precondition,
            Error::CapExceeded { .. } | Error::InsufficientCaps { .. } => Category::Cap,
        }
    }

    pub(crate) fn dim(context: impl Into<String>, expected: usize, found: usize) -> Error {
        Error::Dimension { context: context.into(), expected, found }
    }
}
