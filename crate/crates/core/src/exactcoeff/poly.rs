use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use super::{CoeffError, FieldSpec, Scalar};

/// A coefficient ring: a base field together with an ordered list of named parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: FieldSpec,
    params: Vec<String>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(field: FieldSpec, params: &[S]) -> Result<RingRef, CoeffError> {
        let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, p) in params.iter().enumerate() {
            if params[..i].contains(p) {
                return Err(CoeffError::DuplicateParameter(p.clone()));
            }
        }
        Ok(Arc::new(Ring { field, params }))
    }

    /// A ring without parameters.
    pub fn ground(field: FieldSpec) -> RingRef {
        Arc::new(Ring {
            field,
            params: Vec::new(),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub fn is_ground(&self) -> bool {
        self.params.is_empty()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            write!(f, "{}", self.field)
        } else {
            write!(f, "{}[{}]", self.field, self.params.join(","))
        }
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector indexed like the ring's parameter list.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 10]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the ring's parameters with exact base-field coefficients.
///
/// No zero coefficient is ever stored, so two values are equal exactly when
/// their rings and term maps agree.
#[derive(Debug, Clone)]
pub struct PolyScalar {
    ring: RingRef,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for PolyScalar {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for PolyScalar {}

impl PolyScalar {
    pub fn zero(ring: &RingRef) -> Self {
        PolyScalar {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.params.len()), c);
        }
        p
    }

    pub fn from_i64(ring: &RingRef, v: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(v))
    }

    pub fn param(ring: &RingRef, name: &str) -> Result<Self, CoeffError> {
        let i = ring
            .param_index(name)
            .ok_or_else(|| CoeffError::UnknownParameter(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut p = Self::zero(ring);
        p.terms
            .insert(Monomial::var(ring.params.len(), i), ring.field.one());
        p
    }

    pub fn from_terms(
        ring: &RingRef,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.params.len(), "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value when the polynomial has no parameter dependence.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest power of parameter `i` occurring in any term.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &PolyScalar) -> Result<(), CoeffError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(CoeffError::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &PolyScalar) -> Result<PolyScalar, CoeffError> {
        self.check_ring(other)?;
        let mut r = self.clone();
        r.add_assign_unchecked(other);
        Ok(r)
    }

    pub fn try_sub(&self, other: &PolyScalar) -> Result<PolyScalar, CoeffError> {
        self.check_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), &-c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &PolyScalar) -> Result<PolyScalar, CoeffError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if let Some(c) = other.constant_value() {
            return Ok(self.scale(&c));
        }
        if let Some(c) = self.constant_value() {
            return Ok(other.scale(&c));
        }
        let mut r = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(r)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &PolyScalar) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    /// `self += k * other` for a base-field scalar `k`; the result keeps `self`'s ring.
    pub(crate) fn add_scalar_multiple(&mut self, other: &PolyScalar, k: &Scalar) {
        if k.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), &(v * k));
        }
    }

    /// `self += c * other`, rings assumed equal.
    pub(crate) fn add_scaled_unchecked(&mut self, other: &PolyScalar, c: &PolyScalar) {
        if let Some(k) = c.constant_value() {
            if k.is_zero() {
                return;
            }
            for (m, v) in &other.terms {
                self.add_term(m.clone(), &(v * &k));
            }
        } else {
            for (ma, ca) in &other.terms {
                for (mb, cb) in &c.terms {
                    self.add_term(ma.mul(mb), &(ca * cb));
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> PolyScalar {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        PolyScalar {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> PolyScalar {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution into `target`.
    ///
    /// Each parameter of `self` is replaced by its binding when one is given,
    /// and otherwise by the equally named parameter of `target`. Binding values
    /// must live in `target`.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, PolyScalar>,
        target: &RingRef,
    ) -> Result<PolyScalar, CoeffError> {
        if self.ring.field != target.field {
            return Err(CoeffError::RingMismatch(
                self.ring.to_string(),
                target.to_string(),
            ));
        }
        let used: Vec<bool> = (0..self.ring.params.len())
            .map(|i| self.terms.keys().any(|m| m.0.get(i).is_some_and(|&e| e > 0)))
            .collect();
        let mut images = Vec::with_capacity(self.ring.params.len());
        for (name, &used) in self.ring.params.iter().zip(&used) {
            let img = match bindings.get(name) {
                Some(v) => {
                    if !same_ring(v.ring(), target) {
                        return Err(CoeffError::RingMismatch(
                            v.ring.to_string(),
                            target.to_string(),
                        ));
                    }
                    v.clone()
                }
                None if !used => PolyScalar::zero(target),
                None => PolyScalar::param(target, name)
                    .map_err(|_| CoeffError::UnboundParameter(name.clone()))?,
            };
            images.push(img);
        }
        let mut out = Self::zero(target);
        let mut powers: Vec<Vec<PolyScalar>> = images
            .iter()
            .map(|i| vec![PolyScalar::one(target), i.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = PolyScalar::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out.add_assign_unchecked(&t);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a ring whose parameters include all of ours.
    pub fn embed(&self, target: &RingRef) -> Result<PolyScalar, CoeffError> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        self.substitute(&BTreeMap::new(), target)
    }

    /// Evaluates to a base-field value; every occurring parameter must be bound.
    pub fn evaluate(&self, values: &BTreeMap<String, Scalar>) -> Result<Scalar, CoeffError> {
        let f = self.ring.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.ring.params[i];
                let v = values
                    .get(name)
                    .ok_or_else(|| CoeffError::UnboundParameter(name.clone()))?;
                for _ in 0..e {
                    t = &t * v;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Returns `(c, q)` with `self = c * var_i + q` when `var_i` occurs only
    /// linearly with a constant coefficient `c`.
    pub fn linear_in(&self, i: usize) -> Option<(Scalar, PolyScalar)> {
        let mut coeff = None;
        let mut rest = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            match m.0[i] {
                0 => rest.add_term(m.clone(), c),
                1 if m.degree() == 1 => coeff = Some(c.clone()),
                _ => return None,
            }
        }
        coeff.map(|c| (c, rest))
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.params[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    /// Prints without parentheses; callers wrap multi-term values as needed.
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }

    /// True when this value prints as a single signed term (no parentheses needed
    /// as a factor once the sign is pulled out).
    pub fn is_monomial_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// The sign of the single term, when there is exactly one.
    pub fn leading_sign_negative(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_negative()
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    /// Panics on ring mismatch; use [`PolyScalar::try_add`] for a checked version.
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        self.try_sub(rhs)
            .expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        self.try_mul(rhs)
            .expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, rhs: PolyScalar) -> PolyScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -&self
    }
}
