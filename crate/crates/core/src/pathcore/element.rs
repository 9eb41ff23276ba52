use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::exactcoeff::{same_ring, PolyScalar, RingRef, Scalar};

use super::{PathError, Quiver, QuiverRef, VertexId, Word};

/// A finite linear combination of paths with polynomial coefficients.
///
/// Terms are kept in canonical word order and zero coefficients are never
/// stored, so equality is structural.
#[derive(Debug, Clone)]
pub struct Element {
    quiver: QuiverRef,
    ring: RingRef,
    terms: BTreeMap<Word, PolyScalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
            && same_ring(&self.ring, &other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(quiver: &QuiverRef, ring: &RingRef) -> Element {
        Element {
            quiver: quiver.clone(),
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(quiver: &QuiverRef, ring: &RingRef, w: Word) -> Element {
        Self::monomial(quiver, ring, w, PolyScalar::one(ring))
    }

    pub fn monomial(quiver: &QuiverRef, ring: &RingRef, w: Word, c: PolyScalar) -> Element {
        let mut e = Self::zero(quiver, ring);
        e.add_term(w, &c);
        e
    }

    /// The sum of all trivial paths, i.e. the unit of the path algebra.
    pub fn identity(quiver: &QuiverRef, ring: &RingRef) -> Element {
        let mut e = Self::zero(quiver, ring);
        for v in 0..quiver.num_vertices() as VertexId {
            e.add_term(Word::trivial(v), &PolyScalar::one(ring));
        }
        e
    }

    /// Builds an element from a term map whose coefficients are all nonzero.
    pub(crate) fn from_terms_unchecked(
        quiver: &QuiverRef,
        ring: &RingRef,
        terms: BTreeMap<Word, PolyScalar>,
    ) -> Element {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Element {
            quiver: quiver.clone(),
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Word, PolyScalar> {
        self.terms
    }

    pub fn quiver(&self) -> &QuiverRef {
        &self.quiver
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &PolyScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> PolyScalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| PolyScalar::zero(&self.ring))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// `(source, target)` shared by every term, if any.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source(), first.target());
        it.all(|w| (w.source(), w.target()) == ends).then_some(ends)
    }

    /// Terms of exactly the given path degree.
    pub fn degree_part(&self, d: usize) -> Element {
        Element {
            quiver: self.quiver.clone(),
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &PolyScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_unchecked(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * w`, the coefficient given as the product `c1 * c2`.
    pub(crate) fn add_term_product(&mut self, w: Word, c1: &PolyScalar, c2: &PolyScalar) {
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                let p = c1 * c2;
                if !p.is_zero() {
                    v.insert(p);
                }
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_scaled_unchecked(c1, c2);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Element) -> Result<(), PathError> {
        if !(Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver) {
            return Err(PathError::QuiverMismatch);
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(PathError::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, PathError> {
        self.check_compatible(other)?;
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), c);
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element, PathError> {
        self.check_compatible(other)?;
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), &-c);
        }
        Ok(r)
    }

    /// Algebra product: bilinear extension of concatenation, where
    /// non-composable pairs of words contribute zero.
    pub fn try_mul(&self, other: &Element) -> Result<Element, PathError> {
        self.check_compatible(other)?;
        let mut r = Self::zero(&self.quiver, &self.ring);
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                if u.target() == v.source() {
                    r.add_term_product(u.concat_unchecked(v), cu, cv);
                }
            }
        }
        Ok(r)
    }

    pub fn neg(&self) -> Element {
        Element {
            quiver: self.quiver.clone(),
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &PolyScalar) -> Result<Element, PathError> {
        if !same_ring(&self.ring, c.ring()) {
            return Err(PathError::RingMismatch(
                self.ring.to_string(),
                c.ring().to_string(),
            ));
        }
        let mut r = Self::zero(&self.quiver, &self.ring);
        for (w, v) in &self.terms {
            r.add_term_product(w.clone(), v, c);
        }
        Ok(r)
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Element {
        let mut r = Self::zero(&self.quiver, &self.ring);
        for (w, v) in &self.terms {
            r.add_term(w.clone(), &v.scale(c));
        }
        r
    }

    /// Multiplies every term on the left by `u` and on the right by `v`,
    /// dropping terms that do not compose.
    pub fn sandwich(&self, u: &Word, v: &Word) -> Element {
        let mut r = Self::zero(&self.quiver, &self.ring);
        for (w, c) in &self.terms {
            if u.target() == w.source() && w.target() == v.source() {
                r.add_term(u.concat_unchecked(w).concat_unchecked(v), c);
            }
        }
        r
    }

    /// Moves the element into a ring whose parameters include ours.
    pub fn embed(&self, ring: &RingRef) -> Result<Element, PathError> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        let mut r = Self::zero(&self.quiver, ring);
        for (w, c) in &self.terms {
            r.add_term(w.clone(), &c.embed(ring)?);
        }
        Ok(r)
    }

    /// Applies coefficient-wise polynomial substitution.
    pub fn map_coeffs<F>(&self, ring: &RingRef, mut f: F) -> Result<Element, PathError>
    where
        F: FnMut(&PolyScalar) -> Result<PolyScalar, crate::exactcoeff::CoeffError>,
    {
        let mut r = Self::zero(&self.quiver, ring);
        for (w, c) in &self.terms {
            r.add_term(w.clone(), &f(c)?);
        }
        Ok(r)
    }

    /// Applies the path-algebra homomorphism fixing trivial paths and sending
    /// arrow `i` to `images[i]`.
    pub fn apply_hom(&self, images: &[Element]) -> Result<Element, PathError> {
        let mut r = Self::zero(&self.quiver, &self.ring);
        for (w, c) in &self.terms {
            if w.is_trivial() {
                r.add_term(w.clone(), c);
                continue;
            }
            let mut img = images[w.arrows()[0] as usize].clone();
            for &a in &w.arrows()[1..] {
                img = img.try_mul(&images[a as usize])?;
            }
            for (u, cu) in img.terms {
                r.add_term_product(u, &cu, c);
            }
        }
        Ok(r)
    }

    pub fn display(&self) -> ElementDisplay<'_> {
        ElementDisplay(self)
    }
}

pub struct ElementDisplay<'a>(&'a Element);

/// Writes one signed term `c*w`.
fn fmt_term(
    f: &mut fmt::Formatter<'_>,
    q: &Quiver,
    w: &Word,
    c: &PolyScalar,
    first: bool,
) -> fmt::Result {
    let negative = c.leading_sign_negative();
    match (first, negative) {
        (true, true) => write!(f, "- ")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let c = if negative { -c } else { c.clone() };
    if c.is_monomial_term() {
        if !(c.constant_value().is_some_and(|v| v.is_one())) {
            write!(f, "{c}*")?;
        }
    } else {
        write!(f, "({c})*")?;
    }
    write!(f, "{}", w.display(q))
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.0;
        if e.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in e.terms.iter().enumerate() {
            fmt_term(f, &e.quiver, w, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display().fmt(f)
    }
}
