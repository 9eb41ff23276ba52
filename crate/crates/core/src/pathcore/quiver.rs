use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::PathError;

pub type ArrowId = u16;
pub type VertexId = u16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver. Vertex and arrow ids are positions in declaration order.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

pub type QuiverRef = Arc<Quiver>;

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new<V, A>(vertices: &[V], arrows: &[(A, V, V)]) -> Result<QuiverRef, PathError>
    where
        V: AsRef<str>,
        A: AsRef<str>,
    {
        let mut vertex_index = HashMap::new();
        let mut names = Vec::new();
        for v in vertices {
            let v = v.as_ref().to_string();
            if vertex_index.insert(v.clone(), names.len() as VertexId).is_some() {
                return Err(PathError::DuplicateVertex(v));
            }
            names.push(v);
        }
        let mut arrow_index = HashMap::new();
        let mut list = Vec::new();
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            let lookup = |v: &V| {
                vertex_index
                    .get(v.as_ref())
                    .copied()
                    .ok_or_else(|| PathError::UnknownVertex(v.as_ref().to_string()))
            };
            let (source, target) = (lookup(s)?, lookup(t)?);
            if name == "e" {
                return Err(PathError::ReservedName(name));
            }
            if arrow_index.insert(name.clone(), list.len() as ArrowId).is_some() {
                return Err(PathError::DuplicateArrow(name));
            }
            list.push(Arrow {
                name,
                source,
                target,
            });
        }
        Ok(Arc::new(Quiver {
            vertices: names,
            arrows: list,
            vertex_index,
            arrow_index,
        }))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id as usize]
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v as usize]
    }

    /// Arrows leaving `v`, in declaration order.
    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len() as ArrowId).filter(move |&a| self.arrows[a as usize].source == v)
    }

    /// All paths of exactly `degree` arrows, in canonical word order.
    pub fn paths_of_degree(&self, degree: usize) -> Vec<Word> {
        let mut cur: Vec<Word> = (0..self.vertices.len() as VertexId).map(Word::trivial).collect();
        for _ in 0..degree {
            let mut next = Vec::new();
            for w in &cur {
                for a in self.arrows_from(w.target()) {
                    next.push(w.extend(self, a));
                }
            }
            cur = next;
        }
        cur.sort();
        cur
    }
}

/// A path in a quiver: either a trivial path at a vertex or a nonempty,
/// composable arrow sequence read left to right (first arrow traversed first).
///
/// Words order by degree, then lexicographically by arrow id, then by endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    src: VertexId,
    tgt: VertexId,
    arrows: SmallVec<[ArrowId; 12]>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.src.cmp(&other.src))
            .then_with(|| self.tgt.cmp(&other.tgt))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn trivial(v: VertexId) -> Word {
        Word {
            src: v,
            tgt: v,
            arrows: SmallVec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Word {
        let ar = q.arrow(a);
        Word {
            src: ar.source,
            tgt: ar.target,
            arrows: SmallVec::from_slice(&[a]),
        }
    }

    /// Builds a word from arrow ids, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: &[ArrowId]) -> Result<Word, PathError> {
        let (first, rest) = arrows.split_first().ok_or(PathError::EmptyWord)?;
        let mut w = Word::arrow(q, *first);
        for &a in rest {
            w = w.concat(q, &Word::arrow(q, a))?;
        }
        Ok(w)
    }

    /// Parses `a*b*c` (or `e(v)`) into a word.
    pub fn parse(q: &Quiver, text: &str) -> Result<Word, PathError> {
        let t = text.trim();
        if let Some(v) = t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            let v = q
                .vertex_id(v.trim())
                .ok_or_else(|| PathError::UnknownVertex(v.trim().to_string()))?;
            return Ok(Word::trivial(v));
        }
        let ids = t
            .split('*')
            .map(|n| {
                q.arrow_id(n.trim())
                    .ok_or_else(|| PathError::UnknownArrow(n.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::from_arrows(q, &ids)
    }

    pub fn source(&self) -> VertexId {
        self.src
    }

    pub fn target(&self) -> VertexId {
        self.tgt
    }

    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `other`; errors unless `target(self) = source(other)`.
    pub fn concat(&self, q: &Quiver, other: &Word) -> Result<Word, PathError> {
        if self.tgt != other.src {
            return Err(PathError::EndpointMismatch {
                left: self.display(q).to_string(),
                right: other.display(q).to_string(),
            });
        }
        Ok(self.concat_unchecked(other))
    }

    pub(crate) fn concat_unchecked(&self, other: &Word) -> Word {
        debug_assert_eq!(self.tgt, other.src);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Word {
            src: self.src,
            tgt: other.tgt,
            arrows,
        }
    }

    /// Appends one arrow, which must start at the word's target.
    pub fn extend(&self, q: &Quiver, a: ArrowId) -> Word {
        let ar = q.arrow(a);
        debug_assert_eq!(ar.source, self.tgt);
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Word {
            src: self.src,
            tgt: ar.target,
            arrows,
        }
    }

    /// The subword of arrows `[start, end)`; an empty range gives the trivial
    /// path at the appropriate vertex.
    pub fn slice(&self, q: &Quiver, start: usize, end: usize) -> Word {
        if start == end {
            let v = if start == 0 {
                self.src
            } else {
                q.arrow(self.arrows[start - 1]).target
            };
            return Word::trivial(v);
        }
        let arrows = SmallVec::from_slice(&self.arrows[start..end]);
        Word {
            src: q.arrow(arrows[0]).source,
            tgt: q.arrow(arrows[arrows.len() - 1]).target,
            arrows,
        }
    }

    /// Replaces arrows `[start, end)` by `middle`, which must have matching endpoints.
    pub(crate) fn splice(&self, start: usize, end: usize, middle: &Word) -> Word {
        let mut arrows: SmallVec<[ArrowId; 12]> = SmallVec::with_capacity(
            self.arrows.len() - (end - start) + middle.arrows.len(),
        );
        arrows.extend_from_slice(&self.arrows[..start]);
        arrows.extend_from_slice(&middle.arrows);
        arrows.extend_from_slice(&self.arrows[end..]);
        Word {
            src: self.src,
            tgt: self.tgt,
            arrows,
        }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> WordDisplay<'a> {
        WordDisplay { w: self, q }
    }
}

pub struct WordDisplay<'a> {
    w: &'a Word,
    q: &'a Quiver,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.arrows.is_empty() {
            return write!(f, "e({})", self.q.vertex_name(self.w.src));
        }
        for (i, a) in self.w.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.q.arrow(*a).name)?;
        }
        Ok(())
    }
}
