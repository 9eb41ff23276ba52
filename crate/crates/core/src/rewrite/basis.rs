use crate::pathcore::{Element, VertexId, Word};

use super::system::RewriteSystem;
use super::RewriteError;

/// Irreducible words of a certified system and their counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    /// Words in the active monomial order, over the source quiver.
    pub words: Vec<Word>,
    /// `graded[d]` = number of basis words of degree `d`.
    pub graded: Vec<usize>,
    /// `pairs[s][t]` = number of basis words from vertex `s` to vertex `t`.
    pub pairs: Vec<Vec<usize>>,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Graded dimensions of the `(s, t)` component.
    pub fn graded_pair(&self, s: VertexId, t: VertexId) -> Vec<usize> {
        let mut g = vec![0; self.graded.len()];
        for w in &self.words {
            if w.source() == s && w.target() == t {
                g[w.degree()] += 1;
            }
        }
        while g.last() == Some(&0) {
            g.pop();
        }
        g
    }
}

impl RewriteSystem {
    pub fn basis(&self) -> Result<Basis, RewriteError> {
        let n = self.nilpotency.ok_or(RewriteError::NotCertified {
            cap: self.degree_cap,
        })?;
        if !self.fully_confluent {
            return Err(RewriteError::NotCertified {
                cap: self.degree_cap,
            });
        }
        let levels = self.irreducible_levels(n);
        let graded: Vec<usize> = levels[..n].iter().map(Vec::len).collect();
        let nv = self.num_vertices();
        let mut pairs = vec![vec![0; nv]; nv];
        let mut words = Vec::new();
        for w in levels.into_iter().flatten() {
            let w = self.relabel.word_out(&w);
            pairs[w.source() as usize][w.target() as usize] += 1;
            words.push(w);
        }
        Ok(Basis {
            words,
            graded,
            pairs,
        })
    }

    /// Whether every path of degree `n` vanishes in the quotient.
    pub fn radical_power_is_zero(&self, n: usize) -> Result<bool, RewriteError> {
        if n > self.degree_cap {
            return Err(RewriteError::DegreeAboveCap {
                degree: n,
                cap: self.degree_cap,
            });
        }
        if self.homogeneous {
            // homogeneous rules: a degree-n path is zero iff it reduces away,
            // which happens for all of them iff none is irreducible
            let levels = self.irreducible_levels(n);
            return Ok(levels.len() <= n || levels[n].is_empty());
        }
        let q = self.quiver();
        for w in q.paths_of_degree(n) {
            let e = Element::from_word(q, &self.ring, w);
            if !self.normal_form(&e)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
