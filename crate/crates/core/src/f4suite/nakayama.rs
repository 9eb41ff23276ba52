//! Socles of the indecomposable projectives of Λ(F4) and the Nakayama permutation.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::exactcoeff::{Ring, Scalar};
use crate::linalg::{Echelon, SparseRow};
use crate::pathcore::{Element, VertexId, Word};
use crate::report::VerificationReport;

use super::{F4Context, F4Error};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NakayamaPermutation {
    /// `nu[i]` is the vertex supporting the socle of e_iΛ.
    pub nu: Vec<Option<VertexId>>,
    /// Dimension and degree of each socle.
    pub socle: Vec<(usize, Option<usize>)>,
}

impl NakayamaPermutation {
    pub fn is_bijection(&self) -> bool {
        let mut seen: Vec<VertexId> = self.nu.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        self.nu.iter().all(Option::is_some) && seen.len() == self.nu.len()
    }

    pub fn is_identity(&self) -> bool {
        self.nu.iter().enumerate().all(|(i, v)| *v == Some(i as VertexId))
    }
}

/// Right socle of each e_iΛ: combinations of basis paths from `i` killed by
/// every arrow on the right.
pub fn nakayama_permutation(ctx: &F4Context) -> Result<(NakayamaPermutation, VerificationReport), F4Error> {
    let t = Instant::now();
    let mut rep = VerificationReport::new("nakayama", ctx.field);
    let q = ctx.quiver();
    let ring = Ring::ground(ctx.field);
    let basis = ctx.lambda_sys.basis()?;
    let mut nu = Vec::new();
    let mut socle = Vec::new();
    for i in 0..q.num_vertices() as VertexId {
        let words: Vec<&Word> = basis.words.iter().filter(|w| w.source() == i).collect();
        let mut index: BTreeMap<(u16, Word), usize> = BTreeMap::new();
        let mut ech: Echelon<SparseRow> = Echelon::new(ctx.field);
        let mut kernel: Vec<SparseRow> = Vec::new();
        for (k, w) in words.iter().enumerate() {
            let mut row = SparseRow::new();
            for a in q.arrows_from(w.target()) {
                let prod = Element::from_word(q, &ring, w.extend(q, a));
                for (u, c) in ctx.nf(&prod)?.terms() {
                    let n = index.len();
                    let col = *index.entry((a, u.clone())).or_insert(n);
                    row.insert(col, c.constant_value().expect("ground"));
                }
            }
            let unit = SparseRow::from([(k, ctx.field.one())]);
            if let Err(combo) = ech.insert(row, unit) {
                kernel.push(combo);
            }
        }
        let dim = kernel.len();
        let ends: Vec<(VertexId, usize)> = kernel
            .iter()
            .flat_map(|v| v.keys().map(|&k| (words[k].target(), words[k].degree())))
            .collect();
        let target = ends.first().map(|e| e.0).filter(|v| ends.iter().all(|e| e.0 == *v));
        let degree = ends.first().map(|e| e.1).filter(|d| ends.iter().all(|e| e.1 == *d));
        rep.check_bool(
            &format!("socle.{}", q.vertex_name(i)),
            &format!("socle of e_{}L is simple", q.vertex_name(i)),
            dim == 1 && target.is_some(),
            format!(
                "dim {dim}, top vertex {}, degree {}",
                target.map(|v| q.vertex_name(v).to_string()).unwrap_or("-".into()),
                degree.map(|d| d.to_string()).unwrap_or("-".into())
            ),
            Some(t),
        );
        nu.push(if dim == 1 { target } else { None });
        socle.push((dim, degree));
    }
    let perm = NakayamaPermutation { nu, socle };
    let shown: Vec<String> = perm
        .nu
        .iter()
        .enumerate()
        .map(|(i, v)| {
            format!(
                "{}->{}",
                q.vertex_name(i as VertexId),
                v.map(|v| q.vertex_name(v).to_string()).unwrap_or("?".into())
            )
        })
        .collect();
    rep.check_bool("nu.bijective", "nu is a bijection of the vertices", perm.is_bijection(), shown.join(" "), Some(t));
    rep.check_bool(
        "nu.not-identity",
        "nu is not the identity (the algebra is not weakly symmetric)",
        !perm.is_identity(),
        shown.join(" "),
        Some(t),
    );
    let weights = symmetrizing_weights(ctx)?;
    rep.fact("weakly-symmetric", if perm.is_identity() { "yes" } else { "no" });
    rep.fact(
        "symmetric",
        match &weights {
            Some(c) => format!("yes, socle weights {}", c.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")),
            None => "no".to_string(),
        },
    );
    Ok((perm, rep))
}

/// Weights `c_i` on the socle words making `phi(p) = c_i * coeff(p, s_i)`
/// a symmetrizing form, i.e. `phi(ab) = phi(ba)` for every arrow `a` and
/// basis path `b`. `None` when no such nondegenerate form exists.
pub fn symmetrizing_weights(ctx: &F4Context) -> Result<Option<Vec<Scalar>>, F4Error> {
    let q = ctx.quiver();
    let ring = Ring::ground(ctx.field);
    let basis = ctx.lambda_sys.basis()?;
    let top = basis.words.iter().map(Word::degree).max().unwrap_or(0);
    let n = q.num_vertices();
    let mut socle: Vec<Option<&Word>> = vec![None; n];
    for w in basis.words.iter().filter(|w| w.degree() == top) {
        if w.source() != w.target() || socle[w.source() as usize].replace(w).is_some() {
            return Ok(None);
        }
    }
    let Some(socle) = socle.into_iter().collect::<Option<Vec<&Word>>>() else {
        return Ok(None);
    };
    let coeff = |e: &Element, v: usize| -> Result<Scalar, F4Error> {
        let c = ctx.nf(e)?.coeff(socle[v]);
        Ok(c.constant_value().unwrap_or_else(|| ctx.field.zero()))
    };
    // c_i * lambda = c_j * mu for alpha: i -> j and b: j -> i
    let mut constraints = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (i, j) = (arrow.source, arrow.target);
        for b in basis.words.iter().filter(|b| b.degree() + 1 == top && b.source() == j && b.target() == i) {
            let ab = Word::arrow(q, a as _).concat(q, b)?;
            let ba = b.extend(q, a as _);
            let lambda = coeff(&Element::from_word(q, &ring, ab), i as usize)?;
            let mu = coeff(&Element::from_word(q, &ring, ba), j as usize)?;
            constraints.push((i as usize, j as usize, lambda, mu));
        }
    }
    let mut c: Vec<Option<Scalar>> = vec![None; n];
    c[0] = Some(ctx.field.one());
    let mut changed = true;
    while changed {
        changed = false;
        for (i, j, lambda, mu) in &constraints {
            if lambda.is_zero() || mu.is_zero() {
                continue;
            }
            match (&c[*i], &c[*j]) {
                (Some(ci), None) => {
                    c[*j] = Some(&(ci * lambda) * &mu.inv().expect("nonzero"));
                    changed = true;
                }
                (None, Some(cj)) => {
                    c[*i] = Some(&(cj * mu) * &lambda.inv().expect("nonzero"));
                    changed = true;
                }
                _ => {}
            }
        }
    }
    let Some(c) = c.into_iter().collect::<Option<Vec<Scalar>>>() else {
        return Ok(None);
    };
    let consistent = constraints.iter().all(|(i, j, lambda, mu)| &c[*i] * lambda == &c[*j] * mu);
    Ok(consistent.then_some(c))
}
