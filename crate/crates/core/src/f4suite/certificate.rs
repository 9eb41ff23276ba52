//! Isomorphism certificates Λ^f(F4) ≅ Λ(F4) for ground deformations.

use std::collections::BTreeMap;

use rand::Rng;

use crate::exactcoeff::{FieldSpec, PolyScalar, Ring};
use crate::report::VerificationReport;
use crate::rewrite::{complete_with, CompletionOptions};

use super::deform::{lambda_f_f4, DeformationF4, Mode};
use super::solver::{solve_substitution, SolverOptions};
use super::theorem::{generation_witness, paper_substitution, verify_substitution, GeneratorSubstitution};
use super::{F4Context, F4Error};

#[derive(Debug, Clone)]
pub struct IsomorphismCertificate {
    pub field: FieldSpec,
    pub seed: Option<u64>,
    pub deformation: DeformationF4,
    pub substitution: GeneratorSubstitution,
    /// `written` or `solver`.
    pub substitution_source: &'static str,
    pub dim_lambda: usize,
    pub dim_lambda_f: usize,
    pub well_defined: VerificationReport,
    /// Peeled degrees per arrow, with the remainder left after elimination.
    pub generation: Vec<(String, Vec<usize>, String)>,
    pub valid: bool,
}

impl IsomorphismCertificate {
    pub fn report(&self) -> VerificationReport {
        let mut rep = VerificationReport::new("iso-certificate", self.field);
        rep.seed = self.seed;
        rep.fact("f", &self.deformation);
        rep.fact("substitution.source", self.substitution_source);
        rep.fact("substitution", &self.substitution);
        rep.check_bool(
            "dim",
            "dim of the deformed algebra equals dim of the mesh algebra",
            self.dim_lambda == self.dim_lambda_f,
            format!("{} vs {}", self.dim_lambda_f, self.dim_lambda),
            None,
        );
        rep.absorb("well-defined", self.well_defined.clone());
        for (name, degrees, rem) in &self.generation {
            rep.check(
                &format!("generate.{name}"),
                &format!("{name} lies in the subalgebra generated by the new arrows (degrees {degrees:?})"),
                rem,
                None,
            );
        }
        rep
    }
}

/// Draws θ₁, θ₃, θ₄, θ₆, θ₈ (and θ₇ in characteristic 2) uniformly from
/// [-5, 5] and derives the rest from the admissibility constraints.
pub fn sample_admissible<R: Rng>(field: FieldSpec, rng: &mut R) -> DeformationF4 {
    let ring = Ring::ground(field);
    let free: BTreeMap<String, PolyScalar> = DeformationF4::free_names(field)
        .iter()
        .map(|n| (n.to_string(), PolyScalar::from_i64(&ring, rng.gen_range(-5..=5))))
        .collect();
    DeformationF4::normalized(&ring, &free).expect("all free names bound")
}

/// Certifies Λ^f(F4) ≅ Λ(F4) for a ground admissible `f`.
pub fn isomorphism_certificate(
    ctx: &F4Context,
    f: &DeformationF4,
    seed: Option<u64>,
) -> Result<IsomorphismCertificate, F4Error> {
    if !f.is_ground() {
        return Err(F4Error::BadTheta("certificates need ground coefficients".into()));
    }
    if f.field() != ctx.field {
        return Err(F4Error::FieldMismatch(f.field().to_string(), ctx.field.to_string()));
    }
    let pf = lambda_f_f4(f, ctx.field)?;
    let sys_f = complete_with(&pf, &CompletionOptions::default())?;
    let dim_lambda_f = sys_f.basis()?.dim();
    let dim_lambda = ctx.lambda_sys.basis()?.dim();

    let mut source = "written";
    let mut sub = paper_substitution(ctx, f)?;
    let mut well_defined = verify_substitution(ctx, &sub, f, Mode::Ground)?;
    if !well_defined.passed() {
        source = "solver";
        sub = solve_substitution(ctx, f, &SolverOptions::default())?;
        well_defined = verify_substitution(ctx, &sub, f, Mode::Ground)?;
    }
    let generation: Vec<(String, Vec<usize>, String)> = generation_witness(ctx, &sub)?
        .into_iter()
        .map(|(name, _, rem, degrees)| (name, degrees, rem.to_string()))
        .collect();
    let valid = dim_lambda == dim_lambda_f && well_defined.passed() && generation.iter().all(|g| g.2 == "0");
    Ok(IsomorphismCertificate {
        field: ctx.field,
        seed,
        deformation: f.clone(),
        substitution: sub,
        substitution_source: source,
        dim_lambda,
        dim_lambda_f,
        well_defined,
        generation,
        valid,
    })
}
