//! Sparse exact row reduction over a base field.
//!
//! Rows are maps from column index to nonzero scalar. An [`Echelon`] keeps
//! one normalized row per pivot column (the row's largest column) and can carry
//! a payload through the same row operations, which is how right-hand sides
//! and kernel coordinates are tracked.

use std::collections::BTreeMap;

use crate::exactcoeff::{FieldSpec, PolyScalar, Scalar};

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Something that rides along with a row and undergoes the same operations.
pub trait Payload: Clone {
    /// `self -= c * other`
    fn sub_scaled(&mut self, other: &Self, c: &Scalar);
    fn scale(&mut self, c: &Scalar);
    fn is_zero(&self) -> bool;
}

impl Payload for () {
    fn sub_scaled(&mut self, _: &Self, _: &Scalar) {}
    fn scale(&mut self, _: &Scalar) {}
    fn is_zero(&self) -> bool {
        true
    }
}

impl Payload for PolyScalar {
    fn sub_scaled(&mut self, other: &Self, c: &Scalar) {
        self.add_scaled_unchecked(other, &PolyScalar::constant(other.ring(), -c));
    }
    fn scale(&mut self, c: &Scalar) {
        *self = PolyScalar::scale(self, c);
    }
    fn is_zero(&self) -> bool {
        PolyScalar::is_zero(self)
    }
}

impl Payload for SparseRow {
    fn sub_scaled(&mut self, other: &Self, c: &Scalar) {
        row_sub_scaled(self, other, c);
    }
    fn scale(&mut self, c: &Scalar) {
        for v in self.values_mut() {
            *v = &*v * c;
        }
    }
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
}

/// `row -= c * other`, dropping cancelled entries.
pub fn row_sub_scaled(row: &mut SparseRow, other: &SparseRow, c: &Scalar) {
    for (&k, v) in other {
        let d = v * c;
        match row.get_mut(&k) {
            Some(x) => {
                *x = &*x - &d;
                if x.is_zero() {
                    row.remove(&k);
                }
            }
            None => {
                row.insert(k, -&d);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Echelon<P: Payload = ()> {
    field: FieldSpec,
    pivots: BTreeMap<usize, (SparseRow, P)>,
}

impl<P: Payload> Echelon<P> {
    pub fn new(field: FieldSpec) -> Self {
        Echelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Stored rows with their payloads, by ascending pivot column.
    pub fn rows(&self) -> impl Iterator<Item = (&SparseRow, &P)> + '_ {
        self.pivots.values().map(|(r, p)| (r, p))
    }

    /// Fully reduces `row` against the stored pivots, applying the same
    /// operations to `payload`.
    pub fn reduce_with(&self, mut row: SparseRow, payload: &mut P) -> SparseRow {
        let mut bound = usize::MAX;
        loop {
            let Some((&col, v)) = row.range(..bound).next_back() else {
                break;
            };
            match self.pivots.get(&col) {
                Some((prow, pp)) => {
                    let c = v.clone();
                    row_sub_scaled(&mut row, prow, &c);
                    payload.sub_scaled(pp, &c);
                }
                None => bound = col,
            }
        }
        row
    }

    pub fn reduce(&self, row: SparseRow, mut payload: P) -> (SparseRow, P) {
        let r = self.reduce_with(row, &mut payload);
        (r, payload)
    }

    /// Adds a row; returns `Err(payload)` with the reduced payload when the
    /// row is dependent on the stored ones.
    pub fn insert(&mut self, row: SparseRow, payload: P) -> Result<usize, P> {
        let (row, mut payload) = self.reduce(row, payload);
        let Some((&col, lead)) = row.iter().next_back() else {
            return Err(payload);
        };
        let inv = lead.inv().expect("pivot is nonzero");
        let mut row = row;
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        payload.scale(&inv);
        self.pivots.insert(col, (row, payload));
        Ok(col)
    }
}

impl Echelon<()> {
    pub fn add_row(&mut self, row: SparseRow) -> bool {
        self.insert(row, ()).is_ok()
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone(), ()).0.is_empty()
    }
}

impl<P: Payload> Echelon<P> {
    /// Solution of the stored system `row · x = payload` with every free
    /// column set to zero; `ncols` bounds the column indices.
    pub fn back_substitute(&self, ncols: usize, zero: &P) -> Vec<P> {
        let mut x: Vec<P> = vec![zero.clone(); ncols];
        for (&col, (row, rhs)) in &self.pivots {
            let mut v = rhs.clone();
            for (&c, a) in row.range(..col) {
                v.sub_scaled(&x[c], a);
            }
            x[col] = v;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(f: FieldSpec, entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(k, v)| (k, f.from_i64(v))).filter(|(_, v)| !v.is_zero()).collect()
    }

    #[test]
    fn rank_over_rationals_and_f2() {
        let q = FieldSpec::Rationals;
        let mut e = Echelon::new(q);
        assert!(e.add_row(row(q, &[(0, 1), (1, 1)])));
        assert!(e.add_row(row(q, &[(1, 1), (2, 1)])));
        assert!(e.add_row(row(q, &[(0, 1), (2, 1)])));
        assert_eq!(e.rank(), 3);

        let f2 = FieldSpec::Prime(2);
        let mut e = Echelon::new(f2);
        assert!(e.add_row(row(f2, &[(0, 1), (1, 1)])));
        assert!(e.add_row(row(f2, &[(1, 1), (2, 1)])));
        assert!(!e.add_row(row(f2, &[(0, 1), (2, 1)])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn dependent_row_reports_its_combination() {
        let q = FieldSpec::Rationals;
        let mut e: Echelon<SparseRow> = Echelon::new(q);
        let unit = |i: usize| SparseRow::from([(i, q.one())]);
        e.insert(row(q, &[(0, 1), (1, 2)]), unit(0)).unwrap();
        e.insert(row(q, &[(1, 1)]), unit(1)).unwrap();
        let combo = e.insert(row(q, &[(0, 3), (1, 3)]), unit(2)).unwrap_err();
        // r2 = 3*r0 - 3*r1
        assert_eq!(combo, row(q, &[(0, -3), (1, 3), (2, 1)]));
    }
}
