mod common;

use hypercx::cohomology::{
    both_closed_representative, classes_independent, cohomology_group, ddj_lemma_all, exact_primitive, CohomologyKind,
};
use hypercx::families::{build_family, classify_with, ClassifyOptions, FamilyId, FamilySpec};
use hypercx::forms::Form;
use hypercx::hypercomplex::{BigradedComplex, Operator};
use hypercx::linalg::{int, rat, Scalar};
use proptest::prelude::*;

fn closed_for(c: &BigradedComplex, kind: CohomologyKind, f: &Form) -> bool {
    let del = |f: &Form| c.apply(Operator::Del, f).unwrap();
    let delj = |f: &Form| c.apply(Operator::DelJ, f).unwrap();
    match kind {
        CohomologyKind::Dolbeault => del(f).is_zero(),
        CohomologyKind::DelJ => delj(f).is_zero(),
        CohomologyKind::BottChern => del(f).is_zero() && delj(f).is_zero(),
        CohomologyKind::Aeppli => del(&delj(f)).is_zero(),
    }
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec((-2i64..=2, -1i64..=1).prop_map(|(a, b)| Scalar::new(int(a), int(b))), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn dimensions_match_oracle(inst in common::instance()) {
        let c = &inst.complex;
        for kind in CohomologyKind::ALL {
            for p in 0..=c.half() {
                let h = cohomology_group(c, kind, p).unwrap();
                prop_assert_eq!(h.dim, common::cohomology_dim(c, kind, p), "{} p={}", kind, p);
                prop_assert_eq!(h.representatives.len(), h.dim);
            }
        }
    }

    #[test]
    fn representatives_are_closed_and_independent(inst in common::instance()) {
        let c = &inst.complex;
        for kind in CohomologyKind::ALL {
            for p in 0..=c.half() {
                let h = cohomology_group(c, kind, p).unwrap();
                for r in &h.representatives {
                    prop_assert!(closed_for(c, kind, r));
                }
                prop_assert!(classes_independent(c, kind, p, &h.representatives).unwrap());
            }
        }
    }

    #[test]
    fn gap_bounds_on_sl_instances(inst in common::instance()) {
        let r = classify_with(&inst, ClassifyOptions { operator_p: false, natural_maps: false }).unwrap();
        let a = r.analysis.expect("generated instances are integrable");
        if a.sl.sl {
            let bc = a.dim2(CohomologyKind::BottChern);
            let del = a.dim2(CohomologyKind::Dolbeault);
            prop_assert!(del <= bc && bc <= del + 1, "{}: bc {} del {}", inst.label, bc, del);
            if a.hkt.hkt {
                prop_assert_eq!(bc, del);
            }
        }
    }

    #[test]
    fn bott_chern_classes_split_into_both_closed_sigma_parts(inst in common::instance()) {
        let c = &inst.complex;
        for r in cohomology_group(c, CohomologyKind::BottChern, 2).unwrap().representatives {
            let (plus, minus) = c.sigma_decompose(&r).unwrap();
            prop_assert!(closed_for(c, CohomologyKind::BottChern, &plus));
            prop_assert!(closed_for(c, CohomologyKind::BottChern, &minus));
        }
    }

    #[test]
    fn exact_forms_have_checked_primitives(inst in common::instance(), v in coeffs(4), w in coeffs(6)) {
        let c = &inst.complex;
        let beta1 = c.form_from_coords(&v[..c.basis(1, 0).len()], 1);
        let mut cases = vec![
            (CohomologyKind::Dolbeault, c.apply(Operator::Del, &beta1).unwrap(), 2),
            (CohomologyKind::DelJ, c.apply(Operator::DelJ, &beta1).unwrap(), 2),
            (CohomologyKind::Aeppli, c.apply(Operator::Del, &beta1).unwrap().add(&c.apply(Operator::DelJ, &beta1).unwrap()), 2),
        ];
        if c.half() >= 3 {
            cases.push((CohomologyKind::BottChern, c.apply(Operator::Del, &c.apply(Operator::DelJ, &beta1).unwrap()).unwrap(), 3));
        }
        for (kind, f, p) in cases {
            prop_assert!(exact_primitive(c, kind, &f, p).unwrap().is_some(), "{}", kind);
        }
        // a generic form is exact iff its coordinate vector lies in the image
        let f = c.form_from_coords(&w[..c.basis(2, 0).len()], 2);
        let witness = exact_primitive(c, CohomologyKind::Dolbeault, &f, 2).unwrap();
        if let Some(p) = witness {
            prop_assert_eq!(c.apply(Operator::Del, &p.beta).unwrap(), f);
        }
    }

    #[test]
    fn both_closed_representatives_stay_in_class(inst in common::instance()) {
        let c = &inst.complex;
        for r in cohomology_group(c, CohomologyKind::Dolbeault, 2).unwrap().representatives {
            if let Some(b) = both_closed_representative(c, &r, 2).unwrap() {
                prop_assert!(closed_for(c, CohomologyKind::BottChern, &b));
                prop_assert!(exact_primitive(c, CohomologyKind::Dolbeault, &b.sub(&r), 2).unwrap().is_some());
            }
        }
    }
}

#[test]
fn gt_one_third_dimensions() {
    let inst = build_family(&FamilySpec::new(FamilyId::Gt, &[("t", rat(1, 3))])).unwrap();
    let c = &inst.complex;
    let dims = |k| (0..=4).map(|p| cohomology_group(c, k, p).unwrap().dim).collect::<Vec<_>>();
    for kind in CohomologyKind::ALL {
        let want: Vec<usize> = (0..=4).map(|p| common::cohomology_dim(c, kind, p)).collect();
        assert_eq!(dims(kind), want, "{kind}");
    }
    assert!(ddj_lemma_all(c).unwrap().iter().all(|l| l.holds == l.witness.is_none()));
}
