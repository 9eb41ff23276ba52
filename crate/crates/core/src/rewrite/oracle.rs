use std::collections::{BTreeMap, HashMap};

use crate::exactcoeff::Scalar;
use crate::linalg::{Echelon, SparseRow};
use crate::pathcore::{Presentation, VertexId, Word};

use super::RewriteError;

/// Graded dimensions of a homogeneous quotient computed by dense
/// elimination in the path space, one degree at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleDims {
    /// `graded[d]` for `d = 0..=cap`.
    pub graded: Vec<usize>,
    /// `pairs[d][s][t]`.
    pub pairs: Vec<Vec<Vec<usize>>>,
}

impl OracleDims {
    /// Graded vector without trailing zeros.
    pub fn trimmed(&self) -> Vec<usize> {
        let mut g = self.graded.clone();
        while g.last() == Some(&0) {
            g.pop();
        }
        g
    }

    pub fn total(&self) -> usize {
        self.graded.iter().sum()
    }
}

/// `I_d = arrows·I_{d-1} + I_{d-1}·arrows + R_d`, reduced per vertex pair.
pub fn graded_oracle(p: &Presentation, cap: usize) -> Result<OracleDims, RewriteError> {
    if !p.is_homogeneous() {
        return Err(RewriteError::Inhomogeneous);
    }
    let q = p.quiver();
    let field = p.ring().field();
    let nv = q.num_vertices();
    let mut rels: Vec<(usize, BTreeMap<Word, Scalar>)> = Vec::new();
    for (i, r) in p.relations().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let mut m = BTreeMap::new();
        for (w, c) in r.terms() {
            let v = c
                .constant_value()
                .ok_or(RewriteError::ParametricCoefficient { relation: i + 1 })?;
            m.insert(w.clone(), v);
        }
        rels.push((r.max_degree().unwrap(), m));
    }

    let mut graded = Vec::with_capacity(cap + 1);
    let mut pairs = Vec::with_capacity(cap + 1);
    let mut prev: Vec<BTreeMap<Word, Scalar>> = Vec::new();
    for d in 0..=cap {
        let paths = q.paths_of_degree(d);
        let mut col: HashMap<&Word, usize> = HashMap::new();
        let mut count = vec![vec![0usize; nv]; nv];
        for w in &paths {
            let c = &mut count[w.source() as usize][w.target() as usize];
            col.insert(w, *c);
            *c += 1;
        }
        let mut ech: HashMap<(VertexId, VertexId), Echelon> = HashMap::new();
        let mut push = |m: BTreeMap<Word, Scalar>| {
            let Some(w0) = m.keys().next() else { return };
            let key = (w0.source(), w0.target());
            let row: SparseRow = m.iter().map(|(w, c)| (col[w], c.clone())).collect();
            ech.entry(key).or_insert_with(|| Echelon::new(field)).add_row(row);
        };
        for g in &prev {
            let (s, t) = {
                let w = g.keys().next().unwrap();
                (w.source(), w.target())
            };
            for a in q.arrows().iter().enumerate().filter(|(_, a)| a.target == s) {
                let aw = Word::arrow(q, a.0 as u16);
                push(g.iter().map(|(w, c)| (aw.concat_unchecked(w), c.clone())).collect());
            }
            for a in q.arrows_from(t) {
                let aw = Word::arrow(q, a);
                push(g.iter().map(|(w, c)| (w.concat_unchecked(&aw), c.clone())).collect());
            }
        }
        for (deg, m) in &rels {
            if *deg == d {
                push(m.clone());
            }
        }
        // span of I_d, back in word coordinates
        let mut words_by_pair: HashMap<(VertexId, VertexId), Vec<&Word>> = HashMap::new();
        for w in &paths {
            words_by_pair.entry((w.source(), w.target())).or_default().push(w);
        }
        let mut next = Vec::new();
        let mut dims = count.clone();
        for (key, e) in &ech {
            dims[key.0 as usize][key.1 as usize] -= e.rank();
            let words = &words_by_pair[key];
            for (row, _) in e.rows() {
                next.push(row.iter().map(|(&k, c)| (words[k].clone(), c.clone())).collect());
            }
        }
        graded.push(dims.iter().flatten().sum());
        pairs.push(dims);
        prev = next;
    }
    Ok(OracleDims { graded, pairs })
}
