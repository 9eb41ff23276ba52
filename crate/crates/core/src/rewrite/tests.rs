use std::time::Instant;

use proptest::prelude::{prop, proptest, prop_assert_eq, ProptestConfig};

use super::*;
use super::Strategy as Redex;
use crate::exactcoeff::{FieldSpec, PolyScalar};
use crate::pathcore::{parse_element, parse_presentation, Element, Presentation, Word};

const R_F4: &str = include_str!("../../presentations/r_f4.alg");
const LAMBDA_F4: &str = include_str!("../../presentations/lambda_f4.alg");

fn over(text: &str, field: &str) -> Presentation {
    parse_presentation(&text.replace("field Q", &format!("field {field}"))).unwrap()
}

fn nf(rs: &RewriteSystem, p: &Presentation, s: &str) -> Element {
    rs.normal_form(&parse_element(p.quiver(), p.ring(), s).unwrap())
        .unwrap()
}

fn words(p: &Presentation, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| w.display(p.quiver()).to_string()).collect()
}

#[test]
fn corner_algebra_basis_is_the_twelve_words() {
    let p = over(R_F4, "Q");
    let rs = complete(&p, 8).unwrap();
    let b = rs.basis().unwrap();
    assert_eq!(
        words(&p, &b.words),
        [
            "e(0)", "x", "y", "x*x", "x*y", "y*x", "x*x*x", "x*x*y", "y*x*x", "x*x*x*x",
            "x*x*x*y", "x*x*x*x*x"
        ]
    );
    assert_eq!(b.graded, [1, 2, 3, 3, 2, 1]);
}

#[test]
fn corner_algebra_reductions() {
    let p = over(R_F4, "Q");
    let rs = complete(&p, 8).unwrap();
    assert_eq!(nf(&rs, &p, "y*y").to_string(), "- x*x - x*y - y*x");
    assert_eq!(nf(&rs, &p, "y*y*y"), nf(&rs, &p, "x*x*x"));
    assert!(nf(&rs, &p, "x*y*x").is_zero());
    assert_eq!(nf(&rs, &p, "y^5"), nf(&rs, &p, "-x^5"));
}

#[test]
fn corner_algebra_radical() {
    let p = over(R_F4, "Q");
    let rs = complete(&p, 8).unwrap();
    assert!(rs.radical_power_is_zero(6).unwrap());
    assert!(!rs.radical_power_is_zero(5).unwrap());
    assert_eq!(rs.nilpotency_index(), Some(6));
}

#[test]
fn relation_free_quiver_keeps_every_path() {
    let text = LAMBDA_F4.split("relations:").next().unwrap().to_string() + "relations:\n";
    let p = parse_presentation(&text).unwrap();
    let opts = CompletionOptions {
        cap: 3,
        auto_escalate: false,
        ..Default::default()
    };
    let rs = complete_with(&p, &opts).unwrap();
    assert_eq!(rs.num_rules(), 0);
    let all: usize = (0..=3).map(|d| p.quiver().paths_of_degree(d).len()).sum();
    assert_eq!(rs.irreducible_words(3).len(), all);
}

#[test]
fn free_loop_is_not_certified() {
    let p = parse_presentation("algebra loop\nvertices 0\narrow x: 0 -> 0\nrelations:\n").unwrap();
    let opts = CompletionOptions {
        cap: 4,
        auto_escalate: false,
        ..Default::default()
    };
    let rs = complete_with(&p, &opts).unwrap();
    assert_eq!(
        words(&p, &rs.irreducible_words(4)),
        ["e(0)", "x", "x*x", "x*x*x", "x*x*x*x"]
    );
    assert!(matches!(rs.basis(), Err(RewriteError::NotCertified { cap: 4 })));
    assert!(matches!(complete(&p, 4), Err(RewriteError::CapExceeded { .. })));
}

#[test]
fn parametric_lead_is_rejected() {
    let p = parse_presentation("algebra t\nparams s\nvertices 0\narrow x: 0 -> 0\nrelations:\ns*x*x + x = 0\n").unwrap();
    assert_eq!(
        complete(&p, 4).unwrap_err(),
        RewriteError::ParametricLead { relation: 1 }
    );
}

#[test]
fn duplicate_and_zero_relations_warn() {
    let p = parse_presentation(
        "algebra d\nvertices 0\narrow x: 0 -> 0\nrelations:\nx*x = 0\nx*x - x*x = 0\n2*x*x = 0\n",
    )
    .unwrap();
    let rs = complete(&p, 4).unwrap();
    assert_eq!(rs.num_rules(), 1);
    assert_eq!(rs.warnings().len(), 2);
}

#[test]
fn corner_algebra_over_small_primes() {
    for f in ["F2", "F3", "F5"] {
        let rs = complete(&over(R_F4, f), 8).unwrap();
        assert_eq!(rs.basis().unwrap().graded, [1, 2, 3, 3, 2, 1], "{f}");
    }
}

#[test]
fn mesh_algebra_dimensions_agree_with_oracle() {
    let p = over(LAMBDA_F4, "Q");
    let t = Instant::now();
    let rs = complete(&p, 12).unwrap();
    let b = rs.basis().unwrap();
    eprintln!(
        "completion {:?}, rules {}, dim {}, graded {:?}",
        t.elapsed(),
        rs.num_rules(),
        b.dim(),
        b.graded
    );
    assert!(rs.radical_power_is_zero(11).unwrap());
    let t = Instant::now();
    let o = graded_oracle(&p, 12).unwrap();
    eprintln!("oracle {:?}", t.elapsed());
    assert_eq!(o.trimmed(), b.graded);
    for (d, pairs) in o.pairs.iter().enumerate() {
        for s in 0..6u16 {
            for t in 0..6u16 {
                let bp = b.graded_pair(s, t);
                assert_eq!(pairs[s as usize][t as usize], bp.get(d).copied().unwrap_or(0));
            }
        }
    }
}

#[test]
fn corner_oracle() {
    let o = graded_oracle(&over(R_F4, "Q"), 8).unwrap();
    assert_eq!(o.trimmed(), [1, 2, 3, 3, 2, 1]);
    let o = graded_oracle(&over(LAMBDA_F4, "Q"), 1).unwrap();
    assert_eq!(o.graded[1], 10);
}

#[test]
fn arrow_precedence_changes_words_not_dimensions() {
    let p = over(LAMBDA_F4, "Q");
    let base = complete(&p, 12).unwrap().basis().unwrap();
    for prec in [
        "ab5,a5,ab4,a4,ab2,a3,ab3,a2,ab1,a1",
        "ab2,ab3,ab1,a1,a2,a3,a4,a5,ab4,ab5",
        "a3,ab2,a2,ab3,a1,ab1,ab5,a4,ab4,a5",
    ] {
        let opts = CompletionOptions {
            order: Some(MonomialOrder::parse(p.quiver(), prec).unwrap()),
            ..Default::default()
        };
        let b = complete_with(&p, &opts).unwrap().basis().unwrap();
        assert_eq!(b.graded, base.graded, "{prec}");
        assert_eq!(b.pairs, base.pairs, "{prec}");
    }
}

fn r_f4_system() -> (Presentation, RewriteSystem) {
    let p = over(R_F4, "Q");
    let rs = complete(&p, 8).unwrap();
    (p, rs)
}

fn arb_word_sum(n: usize, max_len: usize) -> impl proptest::strategy::Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u16..2, 0..max_len), -3i64..4), 0..n)
}

fn build(p: &Presentation, terms: &[(Vec<u16>, i64)]) -> Element {
    let mut e = Element::zero(p.quiver(), p.ring());
    for (a, c) in terms {
        let w = if a.is_empty() {
            Word::trivial(0)
        } else {
            Word::from_arrows(p.quiver(), a).unwrap()
        };
        let t = Element::monomial(p.quiver(), p.ring(), w, PolyScalar::from_i64(p.ring(), *c));
        e = e.try_add(&t).unwrap();
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_linear(a in arb_word_sum(6, 8), b in arb_word_sum(6, 8), k in -5i64..6) {
        let (p, rs) = r_f4_system();
        let (x, y) = (build(&p, &a), build(&p, &b));
        let nx = rs.normal_form(&x).unwrap();
        prop_assert_eq!(rs.normal_form(&nx).unwrap(), nx.clone());
        let ny = rs.normal_form(&y).unwrap();
        prop_assert_eq!(rs.normal_form(&x.try_add(&y).unwrap()).unwrap(), nx.try_add(&ny).unwrap());
        let kk = FieldSpec::Rationals.from_i64(k);
        prop_assert_eq!(rs.normal_form(&x.scale_scalar(&kk)).unwrap(), nx.scale_scalar(&kk));
    }

    #[test]
    fn strategies_agree(a in arb_word_sum(6, 9)) {
        let (p, rs) = r_f4_system();
        let x = build(&p, &a);
        let n0 = rs.normal_form_with(&x, Redex::LeftmostOutermost).unwrap();
        prop_assert_eq!(&rs.normal_form_with(&x, Redex::LeftmostInnermost).unwrap(), &n0);
        prop_assert_eq!(&rs.normal_form_with(&x, Redex::RightmostOutermost).unwrap(), &n0);
    }
}

#[test]
fn relations_reduce_to_zero() {
    for text in [R_F4, LAMBDA_F4] {
        let p = over(text, "Q");
        let rs = complete(&p, 12).unwrap();
        for r in p.relations() {
            assert!(rs.normal_form(r).unwrap().is_zero());
        }
    }
}
