use std::fmt;
use std::sync::Arc;

use crate::exactcoeff::{same_ring, RingRef};

use super::{Element, PathError, QuiverRef};

/// A quiver with relations over a coefficient ring.
#[derive(Debug, Clone)]
pub struct Presentation {
    name: String,
    quiver: QuiverRef,
    ring: RingRef,
    relations: Vec<Element>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && *self.quiver == *other.quiver
            && same_ring(&self.ring, &other.ring)
            && self.relations == other.relations
    }
}

impl Presentation {
    /// Validates that every relation is endpoint-homogeneous and free of
    /// trivial paths. Zero relations are allowed here and dropped later by
    /// completion.
    pub fn new(
        name: impl Into<String>,
        quiver: QuiverRef,
        ring: RingRef,
        relations: Vec<Element>,
    ) -> Result<Presentation, PathError> {
        for (i, r) in relations.iter().enumerate() {
            if !(Arc::ptr_eq(r.quiver(), &quiver) || **r.quiver() == *quiver) {
                return Err(PathError::QuiverMismatch);
            }
            if !same_ring(r.ring(), &ring) {
                return Err(PathError::RingMismatch(
                    r.ring().to_string(),
                    ring.to_string(),
                ));
            }
            if !r.is_zero() && r.endpoints().is_none() {
                return Err(PathError::MixedEndpoints { relation: i + 1 });
            }
            if r.terms().any(|(w, _)| w.is_trivial()) {
                return Err(PathError::TrivialPathRelation { relation: i + 1 });
            }
        }
        Ok(Presentation {
            name: name.into(),
            quiver,
            ring,
            relations,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &QuiverRef {
        &self.quiver
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    /// True when every relation is homogeneous in path degree.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(Element::is_homogeneous)
    }

    /// Prints the presentation in the DSL accepted by [`super::parse_presentation`].
    pub fn to_dsl(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {}", self.name)?;
        writeln!(f, "field {}", self.ring.field())?;
        if !self.ring.params().is_empty() {
            writeln!(f, "params {}", self.ring.params().join(", "))?;
        }
        writeln!(f, "vertices {}", self.quiver.vertices().join(" "))?;
        for a in self.quiver.arrows() {
            writeln!(
                f,
                "arrow {}: {} -> {}",
                a.name,
                self.quiver.vertex_name(a.source),
                self.quiver.vertex_name(a.target)
            )?;
        }
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(f, "{} = 0", r)?;
        }
        Ok(())
    }
}
