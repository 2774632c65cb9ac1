use hypercx::families::{FamilyId, FamilySpec};
use hypercx::io::{parse_instance, Body, ExplicitAlgebra, InstanceDocument};
use hypercx::lie::Bracket;
use hypercx::linalg::{rat, Rational, Scalar};
use proptest::prelude::*;

fn q() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_q() -> impl Strategy<Value = Rational> {
    q().prop_filter("nonzero", |r| *r != rat(0, 1))
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(proptest::collection::vec(q(), n), n)
}

fn explicit() -> impl Strategy<Value = ExplicitAlgebra> {
    let n = 4;
    let bracket = (0..n - 1)
        .prop_flat_map(move |i| (Just(i), i + 1..n))
        .prop_flat_map(move |(i, j)| {
            proptest::collection::btree_map(0..n, nonzero_q(), 1..=2)
                .prop_map(move |m| Bracket { i, j, terms: m.into_iter().collect() })
        });
    (
        proptest::collection::vec(bracket, 0..=3),
        square(n),
        square(n),
        proptest::option::of(square(n)),
        proptest::option::of(proptest::collection::vec(proptest::collection::vec((q(), q()).prop_map(|(a, b)| Scalar::new(a, b)), n), 2)),
        any::<bool>(),
    )
        .prop_map(move |(mut brackets, i, j, gram, coframe, labelled)| {
            brackets.sort_by_key(|b| (b.i, b.j));
            brackets.dedup_by_key(|b| (b.i, b.j));
            let labels = labelled.then(|| (1..=n).map(|k| format!("x{k}")).collect());
            ExplicitAlgebra { dimension: n, labels, brackets, i, j, gram, coframe }
        })
}

fn document() -> impl Strategy<Value = InstanceDocument> {
    let family = proptest::collection::btree_map(prop::sample::select(vec!["t1", "t2", "t3", "t4"]), q(), 0..=4)
        .prop_map(|m| {
            let p: Vec<(&str, Rational)> = m.into_iter().collect();
            Body::Family(FamilySpec::new(FamilyId::Nilpotent8, &p))
        });
    (prop_oneof![family, explicit().prop_map(Body::Explicit)], proptest::option::of("[a-z ()=/0-9]{1,12}"))
        .prop_map(|(body, label)| InstanceDocument { label, body })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn round_trip(doc in document()) {
        let text = doc.to_text();
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_text(), text);
    }
}

#[test]
fn fixture_family_document() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/gt.family")).unwrap();
    let doc = parse_instance(&text).unwrap();
    assert_eq!(doc.label.as_deref(), Some("gt(t=1/3)"));
    let Body::Family(spec) = &doc.body else { panic!("expected a family reference") };
    assert_eq!(spec.get("t"), rat(1, 3));
    let inst = doc.build().unwrap();
    assert_eq!(inst.dim(), 8);
    assert!(inst.complex.is_integrable());
    // canonical text is a fixed point
    let canon = doc.to_text();
    assert_eq!(parse_instance(&canon).unwrap().to_text(), canon);
}

#[test]
fn fixture_explicit_documents() {
    let read = |f: &str| std::fs::read_to_string(format!("{}/tests/fixtures/{f}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let heis = parse_instance(&read("heisenberg4.alg")).unwrap().build().unwrap();
    assert_eq!(heis.dim(), 4);
    let err = parse_instance(&read("broken.alg")).unwrap().build().unwrap_err();
    assert_eq!(err.code(), "JACOBI_VIOLATION");
}

#[test]
fn floats_and_mixed_bodies_are_rejected() {
    let e = parse_instance(r#"{"family": {"id": "gt", "params": {"t": 0.5}}}"#).unwrap_err();
    assert_eq!(e.code(), "NON_RATIONAL_LITERAL");
    let e = parse_instance(r#"{"family": {"id": "gt", "params": {"t": "1/2"}}, "dimension": 4}"#).unwrap_err();
    assert_eq!(e.code(), "SCHEMA_ERROR");
}
