//! Degree-by-degree solver for a change of generators carrying the relations
//! of Λ^f(F4) into the ideal of Λ(F4).

use std::collections::BTreeMap;

use crate::exactcoeff::PolyScalar;
use crate::linalg::{Echelon, SparseRow};
use crate::pathcore::{Element, Word};

use super::deform::{lambda_f_f4, DeformationF4};
use super::theorem::GeneratorSubstitution;
use super::{F4Context, F4Error};

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Largest degree of an unknown correction term.
    pub ansatz_cap: usize,
    /// Arrows that receive corrections.
    pub arrows: Vec<String>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            ansatz_cap: 9,
            arrows: vec!["a1".into(), "ab1".into(), "ab3".into()],
        }
    }
}

impl SolverOptions {
    /// Lets every arrow of the quiver carry a correction.
    pub fn widened(mut self, ctx: &F4Context) -> Self {
        self.arrows = ctx.quiver().arrows().iter().map(|a| a.name.clone()).collect();
        self
    }
}

/// Finds corrections of degree 3..=`ansatz_cap` such that every relation of
/// Λ^f(F4) maps to zero in Λ(F4). At degree `d` the new unknowns enter the
/// degree `d + 1` part of the residuals linearly through the quadratic part
/// of the relations; free unknowns are set to zero.
pub fn solve_substitution(
    ctx: &F4Context,
    f: &DeformationF4,
    opts: &SolverOptions,
) -> Result<GeneratorSubstitution, F4Error> {
    let q = ctx.quiver().clone();
    let ring = f.ring().clone();
    let rels = lambda_f_f4(f, f.field())?.relations().to_vec();
    let quadratic: Vec<Element> = rels.iter().map(|r| r.degree_part(2)).collect();
    let basis = ctx.lambda_sys.basis()?;
    let mut sub = GeneratorSubstitution::identity(&q, &ring);
    let targets: Vec<u16> = opts
        .arrows
        .iter()
        .map(|n| q.arrow_id(n).ok_or_else(|| F4Error::Path(crate::pathcore::PathError::UnknownArrow(n.clone()))))
        .collect::<Result<_, _>>()?;

    let residuals = |sub: &GeneratorSubstitution| -> Result<Vec<Element>, F4Error> {
        rels.iter().map(|r| ctx.nf(&sub.apply(r)?)).collect()
    };

    for d in 3..=opts.ansatz_cap {
        let res = residuals(&sub)?;
        for r in &res {
            if let Some(m) = r.min_degree() {
                if m <= d {
                    return Err(F4Error::NoSolution {
                        obstruction: Box::new(r.degree_part(m)),
                    });
                }
            }
        }
        let unknowns: Vec<(u16, &Word)> = targets
            .iter()
            .flat_map(|&b| {
                let a = q.arrow(b);
                basis
                    .words
                    .iter()
                    .filter(move |w| w.degree() == d && w.source() == a.source && w.target() == a.target)
                    .map(move |w| (b, w))
            })
            .collect();
        if unknowns.is_empty() {
            continue;
        }

        // coordinates: (relation, word) of degree d + 1
        let mut coord: BTreeMap<(usize, Word), usize> = BTreeMap::new();
        let mut index = |k: (usize, Word)| {
            let n = coord.len();
            *coord.entry(k).or_insert(n)
        };
        let mut columns: Vec<SparseRow> = Vec::with_capacity(unknowns.len());
        for &(b, w) in &unknowns {
            let wel = Element::from_word(&q, &ring, w.clone());
            let mut col = SparseRow::new();
            for (i, quad) in quadratic.iter().enumerate() {
                let mut lin = Element::zero(&q, &ring);
                for (u, c) in quad.terms() {
                    let (p, s) = (u.arrows()[0], u.arrows()[1]);
                    let pe = Element::from_word(&q, &ring, Word::arrow(&q, p));
                    let se = Element::from_word(&q, &ring, Word::arrow(&q, s));
                    if p == b {
                        lin = lin.try_add(&wel.try_mul(&se)?.scale(c)?)?;
                    }
                    if s == b {
                        lin = lin.try_add(&pe.try_mul(&wel)?.scale(c)?)?;
                    }
                }
                for (u, c) in ctx.nf(&lin)?.terms() {
                    let v = c.constant_value().expect("quadratic part has ground coefficients");
                    col.insert(index((i, u.clone())), v);
                }
            }
            columns.push(col);
        }
        let mut rhs: BTreeMap<usize, PolyScalar> = BTreeMap::new();
        for (i, r) in res.iter().enumerate() {
            for (u, c) in r.degree_part(d + 1).terms() {
                rhs.insert(index((i, u.clone())), -c);
            }
        }

        // one equation per coordinate
        let mut rows: Vec<SparseRow> = vec![SparseRow::new(); coord.len()];
        for (k, col) in columns.iter().enumerate() {
            for (&r, v) in col {
                rows[r].insert(k, v.clone());
            }
        }
        let mut ech: Echelon<PolyScalar> = Echelon::new(f.field());
        let zero = PolyScalar::zero(&ring);
        for (r, row) in rows.into_iter().enumerate() {
            let b = rhs.remove(&r).unwrap_or_else(|| zero.clone());
            if let Err(left) = ech.insert(row, b) {
                if !left.is_zero() {
                    let i = coord.iter().find(|(_, &v)| v == r).map(|((i, _), _)| *i).expect("coordinate");
                    return Err(F4Error::NoSolution {
                        obstruction: Box::new(res[i].degree_part(d + 1)),
                    });
                }
            }
        }
        let x = ech.back_substitute(unknowns.len(), &zero);
        let mut add: BTreeMap<u16, Element> = BTreeMap::new();
        for ((b, w), v) in unknowns.iter().zip(x) {
            if v.is_zero() {
                continue;
            }
            let e = add.entry(*b).or_insert_with(|| Element::zero(&q, &ring));
            *e = e.try_add(&Element::monomial(&q, &ring, (*w).clone(), v))?;
        }
        for (b, e) in add {
            let name = q.arrow(b).name.clone();
            let cur = sub.image(&name).expect("arrow").clone();
            sub.set(&name, cur.try_add(&e)?)?;
        }
    }

    for r in residuals(&sub)? {
        if let Some(m) = r.min_degree() {
            return Err(if m > opts.ansatz_cap + 1 {
                F4Error::AnsatzTooSmall {
                    cap: opts.ansatz_cap,
                    needed: m - 1,
                }
            } else {
                F4Error::NoSolution {
                    obstruction: Box::new(r.degree_part(m)),
                }
            });
        }
    }
    Ok(sub)
}
