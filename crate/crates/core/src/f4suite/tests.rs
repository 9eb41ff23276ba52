use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactcoeff::{parse_poly, FieldSpec, PolyScalar, Ring};
use crate::pathcore::Word;

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::Prime(2);
const F5: FieldSpec = FieldSpec::Prime(5);

fn ctx(field: FieldSpec) -> F4Context {
    F4Context::new(field).unwrap()
}

fn failing(rep: &crate::report::VerificationReport) -> Vec<String> {
    rep.entries.iter().filter(|e| !e.status.is_pass()).map(|e| format!("{} | {}", e.id, e.residual)).collect()
}

/// (x + y + f)² computed directly in R(F4) for ground coefficients.
fn square_vanishes(c: &F4Context, theta: &[i64]) -> bool {
    let ring = Ring::ground(c.field);
    let mut text = String::from("x + y");
    for (w, t) in MONOMIALS.iter().zip(theta) {
        let stars: Vec<String> = w.chars().map(String::from).collect();
        text.push_str(&format!(" + ({t})*{}", stars.join("*")));
    }
    let s = c.r_elem(&ring, &format!("({text})^2")).unwrap();
    c.r_nf(&s).unwrap().is_zero()
}

#[test]
fn admissibility_coefficients_match_the_display() {
    let sys = admissibility_system(Q).unwrap();
    let ring = sys["xxx"].ring().clone();
    let shown = [
        ("xxx", "2*t0 - t1 - t2"),
        ("xxy", "t0"),
        ("yxx", "t0"),
        ("xxxx", "2*t3 - t4 - t5 + t0^2 - t1*t2"),
        ("xxxy", "2*t3 - t4 - t5 + t0*t1 + t0*t2 - t1*t2"),
        ("xxxxx", "2*t6 - 2*t7 + 2*t0*t3 - 2*t1*t5 - 2*t2*t4"),
    ];
    for (w, p) in shown {
        assert_eq!(sys[w], parse_poly(p, &ring).unwrap(), "{w}");
    }
    let others: Vec<&String> = sys.iter().filter(|(w, c)| !c.is_zero() && !shown.iter().any(|s| s.0 == w.as_str())).map(|(w, _)| w).collect();
    assert!(others.is_empty(), "{others:?}");
}

#[test]
fn commutator_is_not_admissible() {
    let f = DeformationF4::ground(Q, &[0, 1, -1, 0, 0, 0, 0, 0, 0]).unwrap();
    let a = is_admissible(&f).unwrap();
    assert!(!a.admissible);
    let (word, value) = a.violated.unwrap();
    assert_eq!(word, "xxxx");
    assert_eq!(value.to_string(), "1");
    assert!(!square_vanishes(&ctx(Q), &[0, 1, -1, 0, 0, 0, 0, 0, 0]));
}

#[test]
fn quartic_correction_is_admissible() {
    let theta = [0, 1, -1, 0, 0, 1, 0, -1, 0];
    let f = DeformationF4::ground(Q, &theta).unwrap();
    assert!(is_admissible(&f).unwrap().admissible);
    assert!(square_vanishes(&ctx(Q), &theta));
    let p = lambda_f_f4(&f, Q).unwrap();
    assert_eq!(p.relations().len(), 9);
}

#[test]
fn nonzero_theta0_is_rejected() {
    let f = DeformationF4::ground(Q, &[1, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    assert!(matches!(lambda_f_f4(&f, Q), Err(F4Error::NotAdmissible { .. })));
}

#[test]
fn zero_deformation_gives_canonical_relations() {
    let c = ctx(Q);
    let ring = Ring::ground(Q);
    let f = DeformationF4::zero(&ring);
    assert!(is_admissible(&f).unwrap().admissible);
    let p = lambda_f_f4(&f, Q).unwrap();
    assert_eq!(p.relations().len(), 9);
    assert_eq!(p.relations()[4], c.elem(&ring, "ab1*a1 + ab3*a2 + ab2*a3").unwrap());
    // consistency of the two presentations
    for r in p.relations() {
        assert!(c.nf(r).unwrap().is_zero(), "{r}");
    }
}

#[test]
fn constraint_equivalence_by_characteristic() {
    for (field, free) in [(Q, false), (F2, true), (FieldSpec::Prime(3), false)] {
        let rep = constraint_equivalence_check(field).unwrap();
        assert!(rep.passed(), "{field}: {:?}", failing(&rep));
        assert_eq!(rep.entry("theta7").unwrap().residual, if free { "free" } else { "determined" });
    }
    let rep = constraint_equivalence_check(Q).unwrap();
    assert_eq!(rep.facts["solved.t7"], "-t1^3 - 2*t1*t3 + 2*t1*t4 + t6");
}

#[test]
fn normalized_symbolic_free_parameters() {
    assert_eq!(DeformationF4::normalized_symbolic(Q).ring().params().len(), 5);
    assert_eq!(DeformationF4::normalized_symbolic(F2).ring().params().len(), 6);
    assert!(is_admissible(&DeformationF4::normalized_symbolic(Q)).unwrap().admissible);
    assert!(is_admissible(&DeformationF4::normalized_symbolic(F2)).unwrap().admissible);
}

#[test]
fn theta_text_forms_agree() {
    let a = DeformationF4::parse(Q, "0,1,-1,0,0,1,0,-1,0").unwrap();
    let b = DeformationF4::parse(Q, "t1=1, t2=-1, theta5=1, t7=-1").unwrap();
    assert_eq!(a, b);
    assert!(DeformationF4::parse(Q, "0,1").is_err());
}

#[test]
fn lemma_and_corner_reports_pass() {
    for field in [Q, F2, FieldSpec::Prime(3), F5] {
        let c = ctx(field);
        let rep = verify_lemma_basis(&c).unwrap();
        assert!(rep.passed(), "{field}: {:?}", failing(&rep));
        for id in ["identity.xyy", "chain.yyxxy", "basis.dim"] {
            assert!(rep.entry(id).unwrap().status.is_pass(), "{id}");
        }
        let rep = corner_check(&c).unwrap();
        assert!(rep.passed(), "{field}: {:?}", failing(&rep));
    }
}

#[test]
fn corner_square_is_a1_sandwich() {
    let c = ctx(Q);
    let ring = Ring::ground(Q);
    let lhs = c.elem(&ring, "(ab2*a3 + ab3*a2)^2").unwrap();
    let rhs = c.elem(&ring, "ab1*a1*ab1*a1").unwrap();
    assert!(c.nf(&lhs).unwrap().is_zero());
    assert!(c.nf(&rhs).unwrap().is_zero());
}

#[test]
fn displayed_sandwich_identities() {
    let c = ctx(Q);
    let ring = Ring::ground(Q);
    for text in [
        "a1*ab2*a3*ab3*a2*ab1 + a1*ab2*a3*ab2*a3*ab1",
        "a3*ab2*a3*ab2*a3*ab2*a3*ab3",
    ] {
        assert!(c.nf(&c.elem(&ring, text).unwrap()).unwrap().is_zero(), "{text}");
    }
}

#[test]
fn a1_sandwiches_by_length() {
    let c = ctx(Q);
    let ring = Ring::ground(Q);
    let nonzero: Vec<bool> = (1..=5)
        .map(|k| !c.nf(&c.elem(&ring, &format!("a1*(ab2*a3)^{k}*ab1")).unwrap()).unwrap().is_zero())
        .collect();
    assert_eq!(nonzero, [true, true, false, true, false]);
}

#[test]
fn zero_deformation_substitution_is_identity() {
    let c = ctx(Q);
    let ring = Ring::ground(Q);
    let f = DeformationF4::zero(&ring);
    let sub = paper_substitution(&c, &f).unwrap();
    assert!(sub.corrections().is_empty());
    let rep = verify_substitution(&c, &sub, &f, Mode::Ground).unwrap();
    assert!(rep.passed(), "{:?}", failing(&rep));
    assert_eq!(rep.entries.len(), 9);
    let rep = verify_inverse(&c, &sub, &f).unwrap();
    assert!(rep.passed(), "{:?}", failing(&rep));
    let solved = solve_substitution(&c, &f, &SolverOptions::default()).unwrap();
    assert!(solved.corrections().is_empty());
}

#[test]
fn written_ab1_coefficient() {
    let c = ctx(Q);
    let f = DeformationF4::normalized_symbolic(Q);
    let sub = paper_substitution(&c, &f).unwrap();
    let w = Word::parse(c.quiver(), "ab3*a2*ab2*a3*ab1").unwrap();
    let expected = parse_poly("2*t3 - t4 + t1^2", f.ring()).unwrap();
    assert_eq!(sub.image("ab1").unwrap().coeff(&w), expected);
}

#[test]
fn written_rel7_holds_symbolically() {
    let c = ctx(Q);
    let f = DeformationF4::normalized_symbolic(Q);
    let sub = paper_substitution(&c, &f).unwrap();
    let rep = verify_substitution(&c, &sub, &f, Mode::Char0Symbolic).unwrap();
    assert!(rep.entry("rel.7").unwrap().status.is_pass());
}

#[test]
fn char0_written_top_coefficient_is_off() {
    // the verifier's ground truth: a1 x^4 ab1 survives with 4t1^2t3 + 4t3^2
    let c = ctx(Q);
    let f = DeformationF4::normalized_symbolic(Q);
    let rep = verify_proof_identities(&c, &f).unwrap();
    let expected = parse_poly("4*t1^2*t3 + 4*t3^2", f.ring()).unwrap();
    assert_eq!(rep.facts["theta.identity.value"], expected.to_string());
    let bad: Vec<&str> = rep.entries.iter().filter(|e| !e.status.is_pass()).map(|e| e.id.as_str()).collect();
    assert_eq!(bad, ["ab1p.a1p", "a1p.ab1p", "sum.step1", "sum", "theta.identity.effective"]);
    for e in rep.entries.iter().filter(|e| !e.status.is_pass()) {
        assert!(e.residual.starts_with("(4*t1^2*t3 + 4*t3^2)*"), "{}", e.residual);
    }
    let f2 = DeformationF4::normalized_symbolic(F2);
    let rep = verify_proof_identities(&ctx(F2), &f2).unwrap();
    assert!(rep.passed(), "{:?}", failing(&rep));
}

#[test]
fn char2_written_substitution_is_reduced_mod_2() {
    let cq = ctx(Q);
    let c2 = ctx(F2);
    let mut values = BTreeMap::new();
    for (n, v) in [("t1", 1), ("t3", 1), ("t4", 0), ("t6", 0), ("t8", 0)] {
        values.insert(n.to_string(), v);
    }
    let build = |field: FieldSpec, extra: Option<i64>| {
        let ring = Ring::ground(field);
        let mut free: BTreeMap<String, PolyScalar> =
            values.iter().map(|(k, v)| (k.clone(), PolyScalar::from_i64(&ring, *v))).collect();
        if let Some(t7) = extra {
            free.insert("t7".into(), PolyScalar::from_i64(&ring, t7));
        }
        DeformationF4::normalized(&ring, &free).unwrap()
    };
    let fq = build(Q, None);
    // over Q t7 = t6 - t1^3 + 2t1(t4 - t3) = -3
    let f2 = build(F2, Some(1));
    assert_eq!(fq.theta(7).to_string(), "-3");
    let sq = paper_substitution(&cq, &fq).unwrap();
    let s2 = paper_substitution(&c2, &f2).unwrap();
    let r2 = Ring::ground(F2);
    for name in ["a1", "ab1", "ab3"] {
        let reduced = crate::pathcore::parse_element(c2.quiver(), &r2, &sq.image(name).unwrap().to_string()).unwrap();
        assert_eq!(&reduced, s2.image(name).unwrap(), "{name}");
    }
    let rep = verify_substitution(&c2, &s2, &f2, Mode::Ground).unwrap();
    assert!(rep.passed(), "{:?}", failing(&rep));
}

#[test]
fn solver_over_f5() {
    let c = ctx(F5);
    let f = DeformationF4::ground(F5, &[0, 1, -1, 0, 0, 1, 0, -1, 0]).unwrap();
    let sub = solve_substitution(&c, &f, &SolverOptions::default()).unwrap();
    let rep = verify_substitution(&c, &sub, &f, Mode::Ground).unwrap();
    assert!(rep.passed(), "{:?}", failing(&rep));
    let rep = verify_inverse(&c, &sub, &f).unwrap();
    assert!(rep.entries.iter().filter(|e| e.id.starts_with("generate.")).all(|e| e.status.is_pass()));
}

#[test]
fn solver_cap_too_small() {
    let c = ctx(Q);
    let f = DeformationF4::normalized_symbolic(Q);
    let opts = SolverOptions {
        ansatz_cap: 3,
        ..Default::default()
    };
    assert!(matches!(solve_substitution(&c, &f, &opts), Err(F4Error::AnsatzTooSmall { .. })));
}

#[test]
fn solver_rejects_nonzero_obstruction_without_corrections() {
    let c = ctx(Q);
    let f = DeformationF4::normalized_symbolic(Q);
    let opts = SolverOptions {
        arrows: vec![],
        ..Default::default()
    };
    assert!(solve_substitution(&c, &f, &opts).is_err());
}

#[test]
fn zero_certificate() {
    let c = ctx(Q);
    let f = DeformationF4::zero(&Ring::ground(Q));
    let cert = isomorphism_certificate(&c, &f, None).unwrap();
    assert!(cert.valid);
    assert_eq!(cert.substitution_source, "written");
    assert_eq!((cert.dim_lambda, cert.dim_lambda_f), (156, 156));
    assert!(cert.report().passed());
}

#[test]
fn certificate_requires_ground_coefficients() {
    let c = ctx(Q);
    assert!(isomorphism_certificate(&c, &DeformationF4::normalized_symbolic(Q), None).is_err());
}

#[test]
fn sampled_certificates_over_f2() {
    let c = ctx(F2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let f = sample_admissible(F2, &mut rng);
        let cert = isomorphism_certificate(&c, &f, Some(11)).unwrap();
        assert!(cert.valid, "{}", cert.report());
    }
}

#[test]
fn socles_of_projectives() {
    let c = ctx(Q);
    let (perm, rep) = nakayama_permutation(&c).unwrap();
    assert!(perm.is_bijection());
    assert!(perm.socle.iter().all(|s| *s == (1, Some(10))));
    assert_eq!(perm.nu[0], Some(0));
    assert!(rep.entry("nu.bijective").unwrap().status.is_pass());
    assert_eq!(rep.facts["weakly-symmetric"], "yes");
}

#[test]
fn symmetrizing_form_exists() {
    for field in [Q, F2, FieldSpec::Prime(3)] {
        let w = symmetrizing_weights(&ctx(field)).unwrap().expect("symmetric");
        assert!(w.iter().all(|c| !c.is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sampled_deformations_are_admissible(seed in any::<u64>()) {
        for field in [Q, F2, F5] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = sample_admissible(field, &mut rng);
            prop_assert!(is_admissible(&f).unwrap().admissible);
            prop_assert!(f.theta(0).is_zero());
        }
    }

    #[test]
    fn ground_dims_match_mesh_algebra(seed in any::<u64>()) {
        let c = ctx(F5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample_admissible(F5, &mut rng);
        let p = lambda_f_f4(&f, F5).unwrap();
        let sys = crate::rewrite::complete(&p, 12).unwrap();
        prop_assert_eq!(sys.basis().unwrap().dim(), c.lambda_sys.basis().unwrap().dim());
    }
}
