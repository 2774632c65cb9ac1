mod common;

use hypercx::families::{block_instance, build_family, random_almost_abelian, sl_check, FamilyId, FamilySpec};
use hypercx::linalg::{int, Rational, Scalar};
use hypercx::metric::{build_metric, hermitian_pairing, hkt_check, hyperkahler_check, HodgeStar};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec((-2i64..=2, -2i64..=2).prop_map(|(a, b)| Scalar::new(int(a), int(b))), n)
}

fn nilpotent() -> impl Strategy<Value = hypercx::instance::Instance> {
    proptest::collection::vec(-2i64..=2, 4).prop_map(|t| {
        let p: Vec<(&str, Rational)> = ["t1", "t2", "t3", "t4"].into_iter().zip(t).map(|(n, v)| (n, int(v))).collect();
        build_family(&FamilySpec::new(FamilyId::Nilpotent8, &p)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn omega_real_q_positive_and_methods_agree(inst in common::instance()) {
        let c = &inst.complex;
        let m = build_metric(c, &inst.gram).unwrap();
        prop_assert!(m.omega_real && m.q_positive);
        // hkt_check errors out if the two methods disagree
        let h = hkt_check(c, &m).unwrap();
        prop_assert_eq!(h.method_a, h.method_b);
        if hyperkahler_check(c, &m) {
            prop_assert!(h.hkt);
        }
    }

    #[test]
    fn unimodular_almost_abelian_hkt_iff_hyperkahler(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = random_almost_abelian(&mut rng, n).unwrap();
        d.a = -d.trace() / int(3);
        let inst = block_instance(&d).unwrap();
        prop_assert!(inst.algebra().is_unimodular());
        let c = &inst.complex;
        let m = build_metric(c, &inst.gram).unwrap();
        prop_assert_eq!(hkt_check(c, &m).unwrap().hkt, hyperkahler_check(c, &m));
    }

    #[test]
    fn pairing_is_positive(inst in common::instance(), v in coeffs(6)) {
        let c = &inst.complex;
        let m = build_metric(c, &inst.gram).unwrap();
        for p in 1..=2 {
            let n = c.basis(p, 0).len();
            let a = c.form_from_coords(&v[..n], p);
            let h = hermitian_pairing(c, &m, &a, &a, p);
            prop_assert!(h.im.is_zero());
            if a.is_zero() {
                prop_assert!(h.re.is_zero());
            } else {
                prop_assert!(h.re.is_positive());
            }
        }
    }

    #[test]
    fn star_is_an_antilinear_involution(inst in nilpotent(), v in coeffs(6), lam in coeffs(1)) {
        prop_assume!(sl_check(&inst).unwrap().sl);
        let c = &inst.complex;
        let m = build_metric(c, &inst.gram).unwrap();
        let star = HodgeStar::new(&inst, &m).unwrap();
        let a = c.form_from_coords(&v, 2);
        let sa = star.apply(c, &a, 2);
        prop_assert_eq!(star.apply(c, &sa, 2), a.clone());
        prop_assert_eq!(star.apply(c, &a.scale(&lam[0]), 2), sa.scale(&lam[0].conj()));
    }
}
