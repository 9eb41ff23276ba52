//! Overlap completion of presentations into rewrite systems, normal forms,
//! bases, and an elimination-based dimension oracle.

mod basis;
mod complete;
mod oracle;
mod order;
mod rules;
mod system;

pub use basis::Basis;
pub use complete::{complete, complete_with, CompletionOptions};
pub use oracle::{graded_oracle, OracleDims};
pub use order::MonomialOrder;
pub use rules::Strategy;
pub use system::RewriteSystem;

use crate::pathcore::PathError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("relation {relation} has a parametric leading coefficient")]
    ParametricLead { relation: usize },
    #[error("relation {relation} has a parametric coefficient; rewriting needs ground coefficients")]
    ParametricCoefficient { relation: usize },
    #[error("completion did not certify finite dimension below the ceiling {ceiling}{}", pending.map(|d| format!(" (next overlap has degree {d})")).unwrap_or_default())]
    CapExceeded { ceiling: usize, pending: Option<usize> },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeAboveCap { degree: usize, cap: usize },
    #[error("irreducible words persist up to the cap {cap}; dimension not certified")]
    NotCertified { cap: usize },
    #[error("relations are not homogeneous in path degree")]
    Inhomogeneous,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("element lives over a different quiver")]
    QuiverMismatch,
    #[error("bad arrow precedence: {0}")]
    BadPrecedence(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[cfg(test)]
mod tests;
