use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use crate::exactcoeff::{PolyScalar, Scalar};
use crate::pathcore::{ArrowId, Word};

/// Which redex of a reducible word is rewritten first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Earliest start position, longest lead there.
    #[default]
    LeftmostOutermost,
    /// Earliest end position, shortest lead there.
    LeftmostInnermost,
    /// Latest start position, longest lead there.
    RightmostOutermost,
}

/// `lead -> Σ rhs`, the lead strictly larger than every rhs word.
#[derive(Debug, Clone)]
pub(crate) struct Rule {
    pub lead: Word,
    pub rhs: Vec<(Word, Scalar)>,
}

/// Coefficients that can absorb base-field multiples during reduction.
pub(crate) trait Coef: Clone {
    fn is_zero(&self) -> bool;
    fn scaled(&self, k: &Scalar) -> Self;
    fn add_scaled(&mut self, other: &Self, k: &Scalar);
}

impl Coef for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn scaled(&self, k: &Scalar) -> Self {
        self * k
    }
    fn add_scaled(&mut self, other: &Self, k: &Scalar) {
        *self = &*self + &(other * k);
    }
}

impl Coef for PolyScalar {
    fn is_zero(&self) -> bool {
        PolyScalar::is_zero(self)
    }
    fn scaled(&self, k: &Scalar) -> Self {
        self.scale(k)
    }
    fn add_scaled(&mut self, other: &Self, k: &Scalar) {
        self.add_scalar_multiple(other, k);
    }
}

pub(crate) fn add_into<C: Coef>(map: &mut BTreeMap<Word, C>, w: Word, c: &C, k: &Scalar) {
    match map.entry(w) {
        Entry::Vacant(v) => {
            let x = c.scaled(k);
            if !x.is_zero() {
                v.insert(x);
            }
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_scaled(c, k);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

type Key = SmallVec<[ArrowId; 12]>;

#[derive(Debug, Clone, Default)]
pub(crate) struct RuleSet {
    slots: Vec<Option<Rule>>,
    index: HashMap<Key, usize>,
    lens: BTreeMap<usize, usize>,
}

impl RuleSet {
    pub fn insert(&mut self, r: Rule) -> usize {
        let i = self.slots.len();
        self.index.insert(SmallVec::from_slice(r.lead.arrows()), i);
        *self.lens.entry(r.lead.degree()).or_default() += 1;
        self.slots.push(Some(r));
        i
    }

    pub fn remove(&mut self, i: usize) -> Rule {
        let r = self.slots[i].take().expect("rule is alive");
        self.index.remove(r.lead.arrows());
        let n = self.lens.get_mut(&r.lead.degree()).unwrap();
        *n -= 1;
        if *n == 0 {
            self.lens.remove(&r.lead.degree());
        }
        r
    }

    pub fn get(&self, i: usize) -> Option<&Rule> {
        self.slots.get(i).and_then(Option::as_ref)
    }

    pub fn get_mut(&mut self, i: usize) -> Option<&mut Rule> {
        self.slots.get_mut(i).and_then(Option::as_mut)
    }

    pub fn alive(&self) -> impl Iterator<Item = (usize, &Rule)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    fn lookup(&self, s: &[ArrowId]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn find_redex(&self, a: &[ArrowId], strategy: Strategy) -> Option<(usize, usize)> {
        let n = a.len();
        match strategy {
            Strategy::LeftmostOutermost => (0..n).find_map(|s| {
                self.lens
                    .keys()
                    .rev()
                    .filter(|&&l| s + l <= n)
                    .find_map(|&l| self.lookup(&a[s..s + l]).map(|r| (s, r)))
            }),
            Strategy::RightmostOutermost => (0..n).rev().find_map(|s| {
                self.lens
                    .keys()
                    .rev()
                    .filter(|&&l| s + l <= n)
                    .find_map(|&l| self.lookup(&a[s..s + l]).map(|r| (s, r)))
            }),
            Strategy::LeftmostInnermost => (1..=n).find_map(|e| {
                self.lens
                    .keys()
                    .filter(|&&l| l <= e)
                    .find_map(|&l| self.lookup(&a[e - l..e]).map(|r| (e - l, r)))
            }),
        }
    }

    /// True when some lead is a suffix of `a`.
    pub fn has_suffix_lead(&self, a: &[ArrowId]) -> bool {
        let n = a.len();
        self.lens
            .keys()
            .take_while(|&&l| l <= n)
            .any(|&l| self.lookup(&a[n - l..]).is_some())
    }

    pub fn is_reducible(&self, a: &[ArrowId]) -> bool {
        self.find_redex(a, Strategy::LeftmostOutermost).is_some()
    }

    /// Rewrites the largest reducible word until none is left. Words of
    /// degree at least `drop_from` are discarded as they appear.
    pub fn reduce<C: Coef>(
        &self,
        mut work: BTreeMap<Word, C>,
        strategy: Strategy,
        drop_from: Option<usize>,
    ) -> BTreeMap<Word, C> {
        let mut out = BTreeMap::new();
        while let Some((w, c)) = work.pop_last() {
            if drop_from.is_some_and(|n| w.degree() >= n) {
                continue;
            }
            match self.find_redex(w.arrows(), strategy) {
                None => {
                    out.insert(w, c);
                }
                Some((start, ri)) => {
                    let rule = self.slots[ri].as_ref().unwrap();
                    let end = start + rule.lead.degree();
                    for (t, k) in &rule.rhs {
                        let nw = w.splice(start, end, t);
                        if drop_from.is_some_and(|n| nw.degree() >= n) {
                            continue;
                        }
                        add_into(&mut work, nw, &c, k);
                    }
                }
            }
        }
        out
    }
}
