//! Quivers, composable path words, linear combinations of paths,
//! presentations, and the text format for presentations.

mod dsl;
mod element;
mod presentation;
mod quiver;

pub use dsl::{parse_element, parse_presentation};
pub use element::{Element, ElementDisplay};
pub use presentation::Presentation;
pub use quiver::{Arrow, ArrowId, Quiver, QuiverRef, VertexId, Word, WordDisplay};

use crate::exactcoeff::CoeffError;
use crate::syntax::{Pos, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("{pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("cannot compose {left} with {right}: endpoints differ")]
    EndpointMismatch { left: String, right: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("`{0}` is reserved for trivial paths")]
    ReservedName(String),
    #[error("`{0}` names both an arrow and a parameter")]
    NameClash(String),
    #[error("a word needs at least one arrow")]
    EmptyWord,
    #[error("relation {relation} mixes paths with different endpoints")]
    MixedEndpoints { relation: usize },
    #[error("relation {relation} contains a trivial path")]
    TrivialPathRelation { relation: usize },
    #[error("elements live over different quivers")]
    QuiverMismatch,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

impl From<SyntaxError> for PathError {
    fn from(e: SyntaxError) -> Self {
        PathError::Syntax {
            pos: e.pos,
            msg: e.msg,
        }
    }
}

#[cfg(test)]
mod tests;
