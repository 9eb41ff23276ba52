use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::exactcoeff::{FieldSpec, PolyScalar, Ring, RingRef};

fn f4_quiver() -> QuiverRef {
    Quiver::new(
        &["0", "1", "2", "3", "4", "5"],
        &[
            ("a1", "1", "0"),
            ("ab1", "0", "1"),
            ("a2", "2", "0"),
            ("ab3", "0", "2"),
            ("a3", "3", "0"),
            ("ab2", "0", "3"),
            ("a4", "4", "2"),
            ("ab4", "2", "5"),
            ("a5", "5", "3"),
            ("ab5", "3", "4"),
        ],
    )
    .unwrap()
}

fn q_ring() -> RingRef {
    Ring::ground(FieldSpec::Rationals)
}

fn elem(q: &QuiverRef, r: &RingRef, s: &str) -> Element {
    parse_element(q, r, s).unwrap()
}

#[test]
fn concat_follows_arrows_left_to_right() {
    let q = f4_quiver();
    let a1 = Word::parse(&q, "a1").unwrap();
    let ab1 = Word::parse(&q, "ab1").unwrap();
    let w = a1.concat(&q, &ab1).unwrap();
    assert_eq!(w.degree(), 2);
    assert_eq!(q.vertex_name(w.source()), "1");
    assert_eq!(q.vertex_name(w.target()), "1");
}

#[test]
fn trivial_path_is_identity_for_concat() {
    let q = f4_quiver();
    let e0 = Word::trivial(q.vertex_id("0").unwrap());
    let ab2 = Word::parse(&q, "ab2").unwrap();
    assert_eq!(e0.concat(&q, &ab2).unwrap(), ab2);
}

#[test]
fn concat_rejects_mismatched_endpoints() {
    let q = f4_quiver();
    let a1 = Word::parse(&q, "a1").unwrap();
    assert!(matches!(
        a1.concat(&q, &a1),
        Err(PathError::EndpointMismatch { .. })
    ));
}

#[test]
fn noncomposable_product_is_zero() {
    let q = f4_quiver();
    let r = q_ring();
    let a1 = elem(&q, &r, "a1");
    assert!(a1.try_mul(&a1).unwrap().is_zero());
}

#[test]
fn free_square_expands_into_four_words() {
    let q = f4_quiver();
    let r = q_ring();
    let s = elem(&q, &r, "ab2*a3 + ab3*a2");
    let sq = s.try_mul(&s).unwrap();
    let expected = elem(
        &q,
        &r,
        "ab2*a3*ab2*a3 + ab2*a3*ab3*a2 + ab3*a2*ab2*a3 + ab3*a2*ab3*a2",
    );
    assert_eq!(sq, expected);
    assert_eq!(sq.len(), 4);
}

#[test]
fn parametric_scalars_multiply() {
    let text = "algebra r\nfield Q\nparams t1, t2\nvertices 0\narrow x: 0 -> 0\narrow y: 0 -> 0\nrelations:\n";
    let p = parse_presentation(text).unwrap();
    let (q, r) = (p.quiver(), p.ring());
    let lhs = elem(q, r, "t1*x").try_mul(&elem(q, r, "t2*y")).unwrap();
    assert_eq!(lhs, elem(q, r, "t1*t2*x*y"));
    assert_eq!(lhs.to_string(), "t1*t2*x*y");
}

#[test]
fn undeclared_vertex_is_reported_with_line() {
    let text = "algebra bad\nvertices 0\narrow a: 9 -> 0\nrelations:\n";
    let err = parse_presentation(text).unwrap_err();
    match err {
        PathError::Syntax { pos, msg } => {
            assert_eq!(pos.line, 3);
            assert!(msg.contains('9'), "{msg}");
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unknown_arrow_in_relation_has_column() {
    let text = "algebra bad\nvertices 0\narrow x: 0 -> 0\nrelations:\nx*z = 0\n";
    match parse_presentation(text).unwrap_err() {
        PathError::Syntax { pos, .. } => assert_eq!((pos.line, pos.col), (5, 3)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn endpoint_incompatible_product_in_relation() {
    let text = "algebra bad\nvertices 0 1\narrow a: 0 -> 1\nrelations:\na*a = 0\n";
    match parse_presentation(text).unwrap_err() {
        PathError::Syntax { msg, .. } => assert!(msg.contains("endpoint-incompatible"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn relation_mixing_endpoints_is_rejected() {
    let text = "algebra bad\nvertices 0 1\narrow a: 0 -> 1\narrow b: 1 -> 0\nrelations:\na*b + b*a = 0\n";
    assert!(matches!(
        parse_presentation(text),
        Err(PathError::Syntax { .. })
    ));
}

#[test]
fn trivial_path_relation_is_rejected() {
    let text = "algebra bad\nvertices 0\narrow x: 0 -> 0\nrelations:\ne(0) - x = 0\n";
    assert!(matches!(
        parse_presentation(text),
        Err(PathError::TrivialPathRelation { relation: 1 })
    ));
}

#[test]
fn powers_and_rhs() {
    let text = "algebra r\nvertices 0\narrow x: 0 -> 0\narrow y: 0 -> 0\nrelations:\n(x + y)^2 = 0\nx*x*x = y*y*y\n";
    let p = parse_presentation(text).unwrap();
    let (q, r) = (p.quiver(), p.ring());
    assert_eq!(p.relations()[0], elem(q, r, "x*x + x*y + y*x + y*y"));
    assert_eq!(p.relations()[1], elem(q, r, "x*x*x - y*y*y"));
}

#[test]
fn prime_field_coefficients_reduce() {
    let text = "algebra r\nfield F3\nvertices 0\narrow x: 0 -> 0\nrelations:\n4*x*x = 0\n";
    let p = parse_presentation(text).unwrap();
    assert_eq!(p.relations()[0].to_string(), "x*x");
}

#[test]
fn presentation_prints_and_reparses() {
    let text = "algebra demo\nfield F7\nparams s, t\nvertices a b\narrow u: a -> b\narrow v: b -> a\nrelations:\nu*v - s*u*v*u*v = 0\n(t^2 + 1)*v*u*v*u + 3*v*u = 0\n";
    let p = parse_presentation(text).unwrap();
    let again = parse_presentation(&p.to_dsl()).unwrap();
    assert_eq!(p, again);
}

#[test]
fn identity_acts_on_both_sides() {
    let q = f4_quiver();
    let r = q_ring();
    let one = Element::identity(&q, &r);
    let x = elem(&q, &r, "a1*ab1 - 2*ab4*a5 + 1/2*e(3)");
    assert_eq!(one.try_mul(&x).unwrap(), x);
    assert_eq!(x.try_mul(&one).unwrap(), x);
}

#[test]
fn ring_mismatch_is_error() {
    let q = f4_quiver();
    let r1 = q_ring();
    let r2 = Ring::ground(FieldSpec::Prime(5));
    let a = Element::from_word(&q, &r1, Word::parse(&q, "a1").unwrap());
    let b = Element::from_word(&q, &r2, Word::parse(&q, "ab1").unwrap());
    assert!(matches!(a.try_mul(&b), Err(PathError::RingMismatch(..))));
}

fn arb_element(q: QuiverRef, r: RingRef) -> impl Strategy<Value = Element> {
    let n = q.arrows().len() as u16;
    prop::collection::vec(
        (
            0..q.num_vertices() as u16,
            prop::collection::vec(0..n, 0..4),
            -4i64..5,
        ),
        0..5,
    )
    .prop_map(move |terms| {
        let mut e = Element::zero(&q, &r);
        for (v, arrows, c) in terms {
            // walk only the composable prefix, starting at v
            let mut w = Word::trivial(v);
            for a in arrows {
                if q.arrow(a).source == w.target() {
                    w = w.extend(&q, a);
                }
            }
            e.add_term(w, &PolyScalar::from_i64(&r, c));
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_associative_and_distributive(
        (a, b, c) in {
            let q = f4_quiver();
            let r = q_ring();
            (arb_element(q.clone(), r.clone()), arb_element(q.clone(), r.clone()), arb_element(q, r))
        }
    ) {
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = a.try_add(&b).unwrap().try_mul(&c).unwrap();
        let rhs = a.try_mul(&c).unwrap().try_add(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn element_print_parse_round_trip(
        a in arb_element(f4_quiver(), q_ring())
    ) {
        let q = a.quiver().clone();
        let r = a.ring().clone();
        let back = parse_element(&q, &r, &a.to_string());
        if a.is_zero() {
            prop_assert!(back.map(|e| e.is_zero()).unwrap_or(false));
        } else {
            prop_assert_eq!(back.unwrap(), a);
        }
    }
}

#[test]
fn quiver_equality_survives_rebuild() {
    let q1 = f4_quiver();
    let q2 = f4_quiver();
    assert!(!Arc::ptr_eq(&q1, &q2));
    assert_eq!(*q1, *q2);
}
