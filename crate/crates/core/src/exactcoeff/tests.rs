use super::*;
use proptest::prelude::*;

fn theta_ring(field: FieldSpec) -> RingRef {
    let names: Vec<String> = (0..9).map(|i| format!("t{i}")).collect();
    Ring::new(field, &names).unwrap()
}

fn p(text: &str, ring: &RingRef) -> PolyScalar {
    parse_poly(text, ring).unwrap()
}

#[test]
fn additive_inverse() {
    let r = theta_ring(FieldSpec::Rationals);
    assert!((p("t1", &r) + p("-t1", &r)).is_zero());
}

#[test]
fn difference_of_squares() {
    let r = theta_ring(FieldSpec::Rationals);
    let lhs = p("t1 + t2", &r) * p("t1 - t2", &r);
    assert_eq!(lhs, p("t1^2 - t2^2", &r));
    assert_eq!(lhs.to_string(), "t1^2 - t2^2");
}

#[test]
fn characteristic_two_cancellation() {
    let r = theta_ring(FieldSpec::Prime(2));
    assert!((p("t7", &r) + p("t7", &r)).is_zero());
    assert!(p("2*t7", &r).is_zero());
}

#[test]
fn zero_tests() {
    let r = theta_ring(FieldSpec::Rationals);
    assert!(PolyScalar::zero(&r).is_zero());
    assert!(p("t6 - t6", &r).is_zero());
    assert!(!p("t6", &r).is_zero());
}

#[test]
fn ring_mismatch_is_an_error() {
    let a = theta_ring(FieldSpec::Rationals);
    let b = Ring::new(FieldSpec::Rationals, &["u"]).unwrap();
    let err = p("t1", &a).try_add(&p("u", &b)).unwrap_err();
    assert!(matches!(err, CoeffError::RingMismatch(_, _)));
    let c = theta_ring(FieldSpec::Prime(3));
    assert!(p("t1", &a).try_mul(&p("t1", &c)).is_err());
}

#[test]
fn forced_cancellation_by_substitution() {
    let r = theta_ring(FieldSpec::Rationals);
    let b = bindings([("t2", p("-t1", &r))]);
    assert!(p("t1 + t2", &r).substitute(&b, &r).unwrap().is_zero());
}

#[test]
fn lemma_quartic_equation_vanishes_under_constraints() {
    let r = theta_ring(FieldSpec::Rationals);
    let b = bindings([
        ("t0", PolyScalar::zero(&r)),
        ("t2", p("-t1", &r)),
        ("t5", p("2*t3 - t4 + t1^2", &r)),
    ]);
    let eq = p("2*t3 - t4 - t5 + t0^2 - t1*t2", &r);
    assert!(eq.substitute(&b, &r).unwrap().is_zero());
}

#[test]
fn numeric_evaluation() {
    let r = theta_ring(FieldSpec::Rationals);
    let f = FieldSpec::Rationals;
    let vals: BTreeMap<String, Scalar> = [("t0", 0), ("t1", 1), ("t2", -1)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), f.from_i64(v)))
        .collect();
    assert!(p("2*t0 - t1 - t2", &r).evaluate(&vals).unwrap().is_zero());
    let err = p("t3", &r).evaluate(&vals).unwrap_err();
    assert_eq!(err, CoeffError::UnboundParameter("t3".into()));
}

#[test]
fn substitution_into_smaller_ring() {
    let big = theta_ring(FieldSpec::Rationals);
    let small = Ring::new(FieldSpec::Rationals, &["t1", "t3"]).unwrap();
    let b = bindings([("t2", p("-t1", &small))]);
    // t3 maps by name, t2 is bound, t4 is neither
    let ok = p("t2*t3 + 1", &big).substitute(&b, &small).unwrap();
    assert_eq!(ok, p("-t1*t3 + 1", &small));
    let err = p("t4", &big).substitute(&b, &small).unwrap_err();
    assert_eq!(err, CoeffError::UnboundParameter("t4".into()));
}

#[test]
fn printing_is_canonical() {
    let r = theta_ring(FieldSpec::Rationals);
    assert_eq!(p("-t4 + 2*t3 + t1^2 + 0*t8", &r).to_string(), "t1^2 + 2*t3 - t4");
    assert_eq!(p("3/2 - t1", &r).to_string(), "-t1 + 3/2");
    assert_eq!(PolyScalar::zero(&r).to_string(), "0");
    let f5 = theta_ring(FieldSpec::Prime(5));
    assert_eq!(p("-t1 - 1", &f5).to_string(), "4*t1 + 4");
}

#[test]
fn linear_extraction() {
    let r = theta_ring(FieldSpec::Rationals);
    let (c, rest) = p("-2*t7 + t6^2", &r).linear_in(7).unwrap();
    assert_eq!(c, FieldSpec::Rationals.from_i64(-2));
    assert_eq!(rest, p("t6^2", &r));
    assert!(p("t7^2 + t7", &r).linear_in(7).is_none());
    assert!(p("t1*t7", &r).linear_in(7).is_none());
}

fn arb_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
    ]
}

fn arb_poly(ring: RingRef) -> impl Strategy<Value = PolyScalar> {
    let n = ring.params().len();
    prop::collection::vec(
        (prop::collection::vec(0u16..3, n), -4i64..5, 1i64..4),
        0..5,
    )
    .prop_map(move |terms| {
        let f = ring.field();
        PolyScalar::from_terms(
            &ring,
            terms.into_iter().map(|(e, a, b)| {
                let c = f
                    .from_ratio(&a.into(), &b.into())
                    .unwrap_or_else(|_| f.from_i64(a));
                (Monomial::from_exponents(&e), c)
            }),
        )
    })
}

fn arb_triple() -> impl Strategy<Value = (PolyScalar, PolyScalar, PolyScalar)> {
    arb_field().prop_flat_map(|f| {
        let r = Ring::new(f, &["a", "b", "c"]).unwrap();
        (arb_poly(r.clone()), arb_poly(r.clone()), arb_poly(r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((x, y, z) in arb_triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn substitution_composes((x, y, z) in arb_triple()) {
        // B1 = {a -> y(b, c)}, B2 = {b -> z(c)}; images of B1 never mention a,
        // and B2 does not touch a
        let ring = x.ring().clone();
        let z_c = z.substitute(&bindings([("a", PolyScalar::zero(&ring)), ("b", PolyScalar::one(&ring))]), &ring).unwrap();
        let y_bc = y.substitute(&bindings([("a", PolyScalar::one(&ring))]), &ring).unwrap();
        let b1 = bindings([("a", y_bc.clone())]);
        let b2 = bindings([("b", z_c.clone())]);
        let two_step = x.substitute(&b1, &ring).unwrap().substitute(&b2, &ring).unwrap();
        let composed = bindings([
            ("a", y_bc.substitute(&b2, &ring).unwrap()),
            ("b", z_c),
        ]);
        prop_assert_eq!(two_step, x.substitute(&composed, &ring).unwrap());
    }

    #[test]
    fn canonical_form_unique((x, y, _z) in arb_triple()) {
        // equal values have identical printed forms and vice versa
        let same = x == y;
        prop_assert_eq!(same, x.to_string() == y.to_string());
        let rebuilt = PolyScalar::from_terms(x.ring(), x.terms().rev().map(|(m, c)| (m.clone(), c.clone())));
        prop_assert_eq!(rebuilt, x);
    }
}
