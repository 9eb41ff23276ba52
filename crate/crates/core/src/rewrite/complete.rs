use std::collections::{BTreeMap, BTreeSet};

use smallvec::SmallVec;

use crate::exactcoeff::{FieldSpec, Scalar};
use crate::pathcore::{ArrowId, Presentation, Quiver, Word};

use super::order::{MonomialOrder, Relabel};
use super::rules::{add_into, Rule, RuleSet, Strategy};
use super::system::{irreducible_levels, RewriteSystem};
use super::RewriteError;

#[derive(Debug, Clone)]
pub struct CompletionOptions {
    /// Largest overlap degree processed before checking for certification.
    pub cap: usize,
    /// Double the cap until the result is certified, up to `ceiling`.
    pub auto_escalate: bool,
    pub ceiling: usize,
    /// Arrow precedence; declaration order when `None`.
    pub order: Option<MonomialOrder>,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            cap: 12,
            auto_escalate: true,
            ceiling: 64,
            order: None,
        }
    }
}

/// Completion starting at `cap`, escalating as needed.
pub fn complete(p: &Presentation, cap: usize) -> Result<RewriteSystem, RewriteError> {
    complete_with(
        p,
        &CompletionOptions {
            cap,
            ..Default::default()
        },
    )
}

type Poly = BTreeMap<Word, Scalar>;

/// An overlap `lead_i = u·s`, `lead_j = s·v` with `|s| = k`, keyed so the
/// queue pops by degree, then word, then rule ids.
type Overlap = (usize, SmallVec<[ArrowId; 12]>, usize, usize, usize);

struct Completer<'a> {
    q: &'a Quiver,
    one: Scalar,
    rules: RuleSet,
    queue: BTreeSet<Overlap>,
    pending: Vec<Poly>,
}

impl Completer<'_> {
    fn new(q: &Quiver, field: FieldSpec) -> Completer<'_> {
        Completer {
            q,
            one: field.one(),
            rules: RuleSet::default(),
            queue: BTreeSet::new(),
            pending: Vec::new(),
        }
    }

    /// Adds `p = 0` (after reduction) as a rule; returns whether it was new.
    fn add(&mut self, p: Poly) -> bool {
        let p = self.rules.reduce(p, Strategy::default(), None);
        let Some((lead, lc)) = p.iter().next_back() else {
            return false;
        };
        let lead = lead.clone();
        let minus_inv = -&lc.inv().expect("nonzero lead");
        let rhs: Vec<(Word, Scalar)> = p
            .iter()
            .rev()
            .skip(1)
            .map(|(w, c)| (w.clone(), c * &minus_inv))
            .collect();
        let swallowed: Vec<usize> = self
            .rules
            .alive()
            .filter(|(_, r)| contains(r.lead.arrows(), lead.arrows()))
            .map(|(i, _)| i)
            .collect();
        for i in swallowed {
            let r = self.rules.remove(i);
            let p = self.rule_poly(&r);
            self.pending.push(p);
        }
        let idx = self.rules.insert(Rule { lead, rhs });
        let others: Vec<usize> = self.rules.alive().map(|(i, _)| i).collect();
        for j in others {
            self.enqueue(idx, j);
            if j != idx {
                self.enqueue(j, idx);
            }
        }
        true
    }

    fn add_all(&mut self, p: Poly) -> bool {
        let mut fresh = self.add(p);
        while let Some(p) = self.pending.pop() {
            fresh |= self.add(p);
        }
        fresh
    }

    fn rule_poly(&self, r: &Rule) -> Poly {
        let mut p: Poly = BTreeMap::new();
        p.insert(r.lead.clone(), self.one.clone());
        for (w, c) in &r.rhs {
            p.insert(w.clone(), -c);
        }
        p
    }

    fn enqueue(&mut self, i: usize, j: usize) {
        let u = self.rules.get(i).unwrap().lead.arrows();
        let v = self.rules.get(j).unwrap().lead.arrows();
        let (m, n) = (u.len(), v.len());
        for k in 1..m.min(n) {
            if u[m - k..] == v[..k] {
                let mut w: SmallVec<[ArrowId; 12]> = SmallVec::from_slice(u);
                w.extend_from_slice(&v[k..]);
                self.queue.insert((w.len(), w, i, j, k));
            }
        }
    }

    /// Resolves one overlap; returns whether a new rule arose.
    fn resolve(&mut self, (_, _, i, j, k): Overlap) -> bool {
        let (Some(ri), Some(rj)) = (self.rules.get(i), self.rules.get(j)) else {
            return false;
        };
        let m = ri.lead.degree();
        let right = rj.lead.slice(self.q, k, rj.lead.degree());
        let left = ri.lead.slice(self.q, 0, m - k);
        let mut s: Poly = BTreeMap::new();
        for (t, c) in &ri.rhs {
            add_into(&mut s, t.concat_unchecked(&right), c, &self.one);
        }
        let minus = -&self.one;
        for (t, c) in &rj.rhs {
            add_into(&mut s, left.concat_unchecked(t), c, &minus);
        }
        self.add_all(s)
    }

    /// Smallest degree `<= cap` without irreducible words.
    fn nilpotency(&self, cap: usize) -> Option<usize> {
        let levels = irreducible_levels(&self.rules, self.q, cap);
        levels.iter().position(Vec::is_empty)
    }

    /// Replaces every rule's right-hand side by its normal form.
    fn interreduce(&mut self) {
        let ids: Vec<usize> = self.rules.alive().map(|(i, _)| i).collect();
        for i in ids {
            let rhs: Poly = self.rules.get(i).unwrap().rhs.iter().cloned().collect();
            let nf = self.rules.reduce(rhs, Strategy::default(), None);
            self.rules.get_mut(i).unwrap().rhs = nf.into_iter().rev().collect();
        }
    }
}

fn contains(hay: &[ArrowId], needle: &[ArrowId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

pub fn complete_with(p: &Presentation, opts: &CompletionOptions) -> Result<RewriteSystem, RewriteError> {
    let order = opts
        .order
        .clone()
        .unwrap_or_else(|| MonomialOrder::declaration(p.quiver()));
    let relabel = Relabel::new(p.quiver(), &order);
    let field = p.ring().field();
    let homogeneous = p.is_homogeneous();
    let mut warnings = Vec::new();

    let mut inputs: Vec<Poly> = Vec::new();
    for (i, r) in p.relations().iter().enumerate() {
        if r.is_zero() {
            warnings.push(format!("relation {} is zero and was dropped", i + 1));
            continue;
        }
        let mut poly: Poly = BTreeMap::new();
        for (w, c) in r.terms() {
            poly.insert(relabel.word_in(w), c.constant_value().unwrap_or_else(|| field.zero()));
        }
        let lead = poly.keys().next_back().unwrap().clone();
        for (w, c) in r.terms() {
            if c.constant_value().is_none() {
                let is_lead = relabel.word_in(w) == lead;
                return Err(if is_lead {
                    RewriteError::ParametricLead { relation: i + 1 }
                } else {
                    RewriteError::ParametricCoefficient { relation: i + 1 }
                });
            }
        }
        inputs.push(poly);
    }

    let inner = relabel.inner.clone();
    let mut c = Completer::new(&inner, field);
    for (i, poly) in inputs.into_iter().enumerate() {
        if !c.add_all(poly) {
            warnings.push(format!(
                "relation {} follows from the preceding ones and was dropped",
                i + 1
            ));
        }
    }

    let mut cap = opts.cap.max(1);
    loop {
        // process every overlap of degree <= cap, smallest first
        let mut homogeneous_stop = None;
        let mut last_checked = 0;
        while let Some(first) = c.queue.first() {
            let d = first.0;
            if d > cap {
                break;
            }
            if homogeneous && d > last_checked {
                // all overlaps below d are resolved, and homogeneous rules
                // from now on have leads of degree >= d
                last_checked = d;
                if let Some(n) = c.nilpotency(d) {
                    homogeneous_stop = Some(n);
                    break;
                }
            }
            let o = c.queue.pop_first().unwrap();
            c.resolve(o);
        }
        let nilpotency = homogeneous_stop.or_else(|| c.nilpotency(cap));
        let fully_confluent = (homogeneous && nilpotency.is_some()) || c.queue.is_empty();
        let certified = nilpotency.is_some() && fully_confluent;
        if certified || !opts.auto_escalate {
            c.interreduce();
            return Ok(RewriteSystem {
                relabel,
                order,
                field,
                ring: p.ring().clone(),
                rules: c.rules,
                degree_cap: cap,
                complete_below_cap: true,
                fully_confluent,
                homogeneous,
                nilpotency,
                warnings,
            });
        }
        if cap >= opts.ceiling {
            return Err(RewriteError::CapExceeded {
                ceiling: opts.ceiling,
                pending: c.queue.first().map(|o| o.0),
            });
        }
        cap = (cap * 2).min(opts.ceiling);
    }
}
