use std::cmp::Ordering;

use crate::pathcore::{ArrowId, Element, Quiver, QuiverRef, Word};

use super::RewriteError;

/// Degree-lexicographic order on words; `precedence` lists arrows from
/// smallest to largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    precedence: Vec<ArrowId>,
}

impl MonomialOrder {
    pub fn declaration(q: &Quiver) -> Self {
        MonomialOrder {
            precedence: (0..q.arrows().len() as ArrowId).collect(),
        }
    }

    /// Arrows named from smallest to largest; every arrow exactly once.
    pub fn from_names<S: AsRef<str>>(q: &Quiver, names: &[S]) -> Result<Self, RewriteError> {
        let mut seen = vec![false; q.arrows().len()];
        let mut precedence = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            let a = q
                .arrow_id(n)
                .ok_or_else(|| RewriteError::BadPrecedence(format!("unknown arrow `{n}`")))?;
            if std::mem::replace(&mut seen[a as usize], true) {
                return Err(RewriteError::BadPrecedence(format!("arrow `{n}` listed twice")));
            }
            precedence.push(a);
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(RewriteError::BadPrecedence(format!(
                "arrow `{}` missing",
                q.arrow(i as ArrowId).name
            )));
        }
        Ok(MonomialOrder { precedence })
    }

    /// Parses `a,b,c` or `a<b<c`.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self, RewriteError> {
        let names: Vec<&str> = text
            .split([',', '<'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Self::from_names(q, &names)
    }

    pub fn precedence(&self) -> &[ArrowId] {
        &self.precedence
    }

    pub fn names(&self, q: &Quiver) -> Vec<String> {
        self.precedence
            .iter()
            .map(|&a| q.arrow(a).name.clone())
            .collect()
    }

    fn ranks(&self) -> Vec<ArrowId> {
        let mut r = vec![0; self.precedence.len()];
        for (i, &a) in self.precedence.iter().enumerate() {
            r[a as usize] = i as ArrowId;
        }
        r
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        let r = self.ranks();
        a.degree()
            .cmp(&b.degree())
            .then_with(|| {
                a.arrows()
                    .iter()
                    .map(|&x| r[x as usize])
                    .cmp(b.arrows().iter().map(|&x| r[x as usize]))
            })
            .then_with(|| a.source().cmp(&b.source()))
            .then_with(|| a.target().cmp(&b.target()))
    }
}

/// A copy of the quiver with arrows renumbered by precedence, so that the
/// built-in word order on the copy is the requested monomial order.
#[derive(Debug, Clone)]
pub(crate) struct Relabel {
    pub outer: QuiverRef,
    pub inner: QuiverRef,
    to_inner: Vec<ArrowId>,
    to_outer: Vec<ArrowId>,
}

impl Relabel {
    pub fn new(q: &QuiverRef, order: &MonomialOrder) -> Self {
        let ranks = order.ranks();
        let identity = order.precedence.iter().enumerate().all(|(i, &a)| i == a as usize);
        let inner = if identity {
            q.clone()
        } else {
            let arrows: Vec<(String, String, String)> = order
                .precedence
                .iter()
                .map(|&a| {
                    let ar = q.arrow(a);
                    (
                        ar.name.clone(),
                        q.vertex_name(ar.source).to_string(),
                        q.vertex_name(ar.target).to_string(),
                    )
                })
                .collect();
            Quiver::new(q.vertices(), &arrows).expect("permuted quiver is valid")
        };
        Relabel {
            outer: q.clone(),
            inner,
            to_inner: ranks,
            to_outer: order.precedence.clone(),
        }
    }

    fn map(w: &Word, q: &Quiver, table: &[ArrowId]) -> Word {
        if w.is_trivial() {
            return w.clone();
        }
        let arrows: Vec<ArrowId> = w.arrows().iter().map(|&a| table[a as usize]).collect();
        Word::from_arrows(q, &arrows).expect("relabelled word stays composable")
    }

    pub fn word_in(&self, w: &Word) -> Word {
        Self::map(w, &self.inner, &self.to_inner)
    }

    pub fn word_out(&self, w: &Word) -> Word {
        Self::map(w, &self.outer, &self.to_outer)
    }

    pub fn elem_out(&self, e: Element) -> Element {
        let ring = e.ring().clone();
        let terms = e
            .into_terms()
            .into_iter()
            .map(|(w, c)| (self.word_out(&w), c))
            .collect();
        Element::from_terms_unchecked(&self.outer, &ring, terms)
    }
}
