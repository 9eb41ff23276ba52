//! Exact scalar arithmetic: arbitrary-precision rationals, prime fields, and
//! sparse multivariate polynomials in named parameters over either.
//!
//! Everything here is immutable value arithmetic. Division is only ever by an
//! invertible base-field scalar; there is no parametric division.

mod field;
mod poly;

use std::collections::BTreeMap;

pub use field::{FieldSpec, Scalar};
pub use poly::{same_ring, Monomial, PolyScalar, Ring, RingRef};

use crate::syntax::{self, Expr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("characteristic {0} is not 0 or a prime below 2^31")]
    BadCharacteristic(u64),
    #[error("cannot parse field `{0}` (expected Q or F<p>)")]
    BadFieldSyntax(String),
    #[error("duplicate parameter `{0}`")]
    DuplicateParameter(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("parameter `{0}` is unbound")]
    UnboundParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Parse(String),
}

/// Parses a polynomial such as `2*t3 - t4 + t1^2` over `ring`.
pub fn parse_poly(text: &str, ring: &RingRef) -> Result<PolyScalar, CoeffError> {
    let expr = syntax::parse_expr(text).map_err(|e| CoeffError::Parse(e.to_string()))?;
    eval_poly(&expr, ring)
}

pub(crate) fn eval_poly(expr: &Expr, ring: &RingRef) -> Result<PolyScalar, CoeffError> {
    Ok(match expr {
        Expr::Num { num, den, .. } => PolyScalar::constant(ring, ring.field().from_ratio(num, den)?),
        Expr::Ident { name, .. } => PolyScalar::param(ring, name)?,
        Expr::Trivial { pos, .. } => {
            return Err(CoeffError::Parse(format!(
                "{pos}: trivial path is not a scalar"
            )))
        }
        Expr::Neg(a) => -eval_poly(a, ring)?,
        Expr::Add(a, b) => eval_poly(a, ring)? + eval_poly(b, ring)?,
        Expr::Sub(a, b) => eval_poly(a, ring)? - eval_poly(b, ring)?,
        Expr::Mul(a, b) => eval_poly(a, ring)? * eval_poly(b, ring)?,
        Expr::Pow(a, k) => eval_poly(a, ring)?.pow(*k),
    })
}

/// Convenience for building binding maps from `(name, value)` pairs.
pub fn bindings<'a>(
    pairs: impl IntoIterator<Item = (&'a str, PolyScalar)>,
) -> BTreeMap<String, PolyScalar> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
mod tests;
