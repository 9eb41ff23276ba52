//! The F4 verification suite: built-in presentations of the mesh algebra
//! Λ(F4), its corner algebra R(F4) = K⟨x,y⟩/(xyx, yxy, (x+y)²), and the
//! deformed algebras Λ^f(F4), together with the checks that tie them together.
//!
//! Arrow names: `a1..a5` and `ab1..ab5` (the barred arrows). The corner
//! generators are x̂ = `ab2*a3` and ŷ = `ab3*a2`.

mod certificate;
mod deform;
mod lemma;
mod nakayama;
mod solver;
mod theorem;

pub use certificate::{isomorphism_certificate, sample_admissible, IsomorphismCertificate};
pub use deform::{
    admissibility_system, constraint_equivalence_check, is_admissible, lambda_f_f4, Admissibility,
    DeformationF4, Mode, MONOMIALS,
};
pub use lemma::{corner_check, verify_lemma_basis, BASIS_B};
pub use nakayama::{nakayama_permutation, symmetrizing_weights, NakayamaPermutation};
pub use solver::{solve_substitution, SolverOptions};
pub use theorem::{
    paper_substitution, verify_inverse, verify_proof_identities, verify_substitution, verify_theorem,
    GeneratorSubstitution,
};

use crate::exactcoeff::{CoeffError, FieldSpec, RingRef};
use crate::pathcore::{parse_element, parse_presentation, Element, PathError, Presentation, QuiverRef, Word};
use crate::rewrite::{complete_with, CompletionOptions, RewriteError, RewriteSystem};

pub const LAMBDA_F4_SOURCE: &str = include_str!("../../presentations/lambda_f4.alg");
pub const R_F4_SOURCE: &str = include_str!("../../presentations/r_f4.alg");

#[derive(Debug, Clone, thiserror::Error)]
pub enum F4Error {
    #[error("f is not admissible: coefficient of {word} is {coefficient}")]
    NotAdmissible { word: String, coefficient: String },
    #[error("deformation is not in constraint-normalized form: {0}")]
    NotNormalized(String),
    #[error("bad theta specification: {0}")]
    BadTheta(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("image of {arrow} does not run between the arrow's endpoints")]
    BadImage { arrow: String },
    #[error("ansatz cap {cap} is below the correction degree {needed}")]
    AnsatzTooSmall { cap: usize, needed: usize },
    #[error("no substitution solves the relations; obstruction: {obstruction}")]
    NoSolution { obstruction: Box<Element> },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

fn with_header(source: &str, field: FieldSpec, params: &[&str]) -> String {
    let mut out = String::new();
    for line in source.lines() {
        if line.trim_start().starts_with("field ") {
            out.push_str(&format!("field {field}\n"));
            if !params.is_empty() {
                out.push_str(&format!("params {}\n", params.join(", ")));
            }
        } else {
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}

/// Λ(F4) over `field`; `params` only widens the coefficient ring.
pub fn lambda_f4(field: FieldSpec, params: &[&str]) -> Result<Presentation, F4Error> {
    Ok(parse_presentation(&with_header(LAMBDA_F4_SOURCE, field, params))?)
}

/// R(F4) over `field`; `params` only widens the coefficient ring.
pub fn r_f4(field: FieldSpec, params: &[&str]) -> Result<Presentation, F4Error> {
    Ok(parse_presentation(&with_header(R_F4_SOURCE, field, params))?)
}

/// Completed Λ(F4) and R(F4) over one field, shared by the checks.
#[derive(Debug, Clone)]
pub struct F4Context {
    pub field: FieldSpec,
    pub lambda: Presentation,
    pub lambda_sys: RewriteSystem,
    pub r: Presentation,
    pub r_sys: RewriteSystem,
}

impl F4Context {
    pub fn new(field: FieldSpec) -> Result<Self, F4Error> {
        let opts = CompletionOptions::default();
        let lambda = lambda_f4(field, &[])?;
        let lambda_sys = complete_with(&lambda, &opts)?;
        let r = r_f4(field, &[])?;
        let r_sys = complete_with(&r, &opts)?;
        Ok(F4Context {
            field,
            lambda,
            lambda_sys,
            r,
            r_sys,
        })
    }

    pub fn quiver(&self) -> &QuiverRef {
        self.lambda.quiver()
    }

    /// Parses an element of the path algebra of Q_F4 over `ring`.
    pub fn elem(&self, ring: &RingRef, text: &str) -> Result<Element, F4Error> {
        Ok(parse_element(self.quiver(), ring, text)?)
    }

    pub fn nf(&self, e: &Element) -> Result<Element, F4Error> {
        Ok(self.lambda_sys.normal_form(e)?)
    }

    /// Parses over R(F4)'s quiver.
    pub fn r_elem(&self, ring: &RingRef, text: &str) -> Result<Element, F4Error> {
        Ok(parse_element(self.r.quiver(), ring, text)?)
    }

    pub fn r_nf(&self, e: &Element) -> Result<Element, F4Error> {
        Ok(self.r_sys.normal_form(e)?)
    }

    /// Images x̂ = ab2*a3 and ŷ = ab3*a2 over `ring`.
    pub fn corner_generators(&self, ring: &RingRef) -> Result<(Element, Element), F4Error> {
        Ok((self.elem(ring, "ab2*a3")?, self.elem(ring, "ab3*a2")?))
    }
}

/// A word of R(F4) written as its letters, e.g. `xxy`; the unit is `1`.
pub(crate) fn letters(q: &QuiverRef, w: &Word) -> String {
    if w.is_trivial() {
        return "1".into();
    }
    w.arrows().iter().map(|&a| q.arrow(a).name.as_str()).collect()
}

/// Evaluates a word in `x`, `y` at given elements; `unit` stands for the empty word.
pub(crate) fn eval_letters(word: &str, x: &Element, y: &Element, unit: &Element) -> Result<Element, F4Error> {
    let mut acc = unit.clone();
    for ch in word.chars() {
        acc = match ch {
            'x' => acc.try_mul(x)?,
            'y' => acc.try_mul(y)?,
            '1' => acc,
            other => return Err(F4Error::BadTheta(format!("letter `{other}` in a corner word"))),
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
