use std::collections::BTreeMap;

use crate::exactcoeff::{FieldSpec, PolyScalar, RingRef};
use crate::pathcore::{Element, QuiverRef, VertexId, Word};

use super::order::{MonomialOrder, Relabel};
use super::rules::{RuleSet, Strategy};
use super::RewriteError;

/// Oriented rules obtained by overlap completion, together with what the
/// completion established about them.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub(crate) relabel: Relabel,
    pub(crate) order: MonomialOrder,
    pub(crate) field: FieldSpec,
    pub(crate) ring: RingRef,
    pub(crate) rules: RuleSet,
    pub(crate) degree_cap: usize,
    pub(crate) complete_below_cap: bool,
    pub(crate) fully_confluent: bool,
    pub(crate) homogeneous: bool,
    pub(crate) nilpotency: Option<usize>,
    pub(crate) warnings: Vec<String>,
}

impl RewriteSystem {
    pub fn quiver(&self) -> &QuiverRef {
        &self.relabel.outer
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Ring of the presentation the system was built from.
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn is_complete_below_cap(&self) -> bool {
        self.complete_below_cap
    }

    /// Every ambiguity resolves, at any degree.
    pub fn is_fully_confluent(&self) -> bool {
        self.fully_confluent
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// Least degree with no irreducible words, if one was found below the cap.
    pub fn nilpotency_index(&self) -> Option<usize> {
        self.nilpotency
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    /// Rules as `(lead, rhs)` pairs over the source quiver, by lead order.
    pub fn rules(&self) -> Vec<(Word, Element)> {
        let mut out: Vec<(Word, Element)> = self
            .rules
            .alive()
            .map(|(_, r)| {
                let terms = r
                    .rhs
                    .iter()
                    .map(|(w, c)| (w.clone(), PolyScalar::constant(&self.ring, c.clone())))
                    .collect();
                let rhs = Element::from_terms_unchecked(&self.relabel.inner, &self.ring, terms);
                (r.lead.clone(), rhs)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter()
            .map(|(l, r)| (self.relabel.word_out(&l), self.relabel.elem_out(r)))
            .collect()
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.rules.is_reducible(self.relabel.word_in(w).arrows())
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element, RewriteError> {
        self.normal_form_with(e, Strategy::default())
    }

    /// Normal form using the given redex choice. Coefficients may involve
    /// parameters of `e`'s ring; only the base fields must agree.
    pub fn normal_form_with(&self, e: &Element, strategy: Strategy) -> Result<Element, RewriteError> {
        if e.ring().field() != self.field {
            return Err(RewriteError::FieldMismatch(
                e.ring().field().to_string(),
                self.field.to_string(),
            ));
        }
        if !(std::sync::Arc::ptr_eq(e.quiver(), &self.relabel.outer)
            || **e.quiver() == *self.relabel.outer)
        {
            return Err(RewriteError::QuiverMismatch);
        }
        if !self.fully_confluent {
            if let Some(d) = e.max_degree().filter(|&d| d > self.degree_cap) {
                return Err(RewriteError::DegreeAboveCap {
                    degree: d,
                    cap: self.degree_cap,
                });
            }
        }
        let drop_from = if self.homogeneous { self.nilpotency } else { None };
        let work: BTreeMap<Word, PolyScalar> = e
            .terms()
            .map(|(w, c)| (self.relabel.word_in(w), c.clone()))
            .collect();
        let out = self.rules.reduce(work, strategy, drop_from);
        let inner = Element::from_terms_unchecked(&self.relabel.inner, e.ring(), out);
        Ok(self.relabel.elem_out(inner))
    }

    /// Normal form of a single word with unit coefficient.
    pub fn reduce_word(&self, w: &Word) -> Result<Element, RewriteError> {
        self.normal_form(&Element::from_word(self.quiver(), &self.ring, w.clone()))
    }

    /// Irreducible words grouped by degree, degrees `0..=max_degree`, each
    /// group in the active monomial order (inner numbering).
    pub(crate) fn irreducible_levels(&self, max_degree: usize) -> Vec<Vec<Word>> {
        irreducible_levels(&self.rules, &self.relabel.inner, max_degree)
    }

    /// Irreducible words of degree at most `max_degree` over the source
    /// quiver, in the active monomial order.
    pub fn irreducible_words(&self, max_degree: usize) -> Vec<Word> {
        self.irreducible_levels(max_degree)
            .into_iter()
            .flatten()
            .map(|w| self.relabel.word_out(&w))
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.relabel.outer.num_vertices()
    }
}

/// Extends irreducible words one arrow at a time; a word is irreducible iff
/// its longest proper prefix is and no lead is a suffix.
pub(crate) fn irreducible_levels(
    rules: &RuleSet,
    q: &crate::pathcore::Quiver,
    max_degree: usize,
) -> Vec<Vec<Word>> {
    let mut levels: Vec<Vec<Word>> = vec![(0..q.num_vertices() as VertexId).map(Word::trivial).collect()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for w in levels.last().unwrap() {
            for a in q.arrows_from(w.target()) {
                let x = w.extend(q, a);
                if !rules.has_suffix_lead(x.arrows()) {
                    next.push(x);
                }
            }
        }
        next.sort();
        let empty = next.is_empty();
        levels.push(next);
        if empty {
            break;
        }
    }
    levels
}
