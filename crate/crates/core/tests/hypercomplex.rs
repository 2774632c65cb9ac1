mod common;

use hypercx::cohomology::DelComplex;
use hypercx::families::{block_instance, build_family, random_almost_abelian, FamilyId, FamilySpec};
use hypercx::forms::Form;
use hypercx::hypercomplex::{BigradedComplex, HypercomplexTriple, Operator, Structure};
use hypercx::lie::{Bracket, LieAlgebra};
use hypercx::linalg::{int, rat, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec((-2i64..=2, -2i64..=2).prop_map(|(a, b)| Scalar::new(int(a), int(b))), n)
}

/// A (2,0)-form from the leading coordinates (the spaces have dimension 1 or 6).
fn form20(c: &BigradedComplex, v: &[Scalar]) -> Form {
    c.form_from_coords(&v[..c.basis(2, 0).len()], 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sigma_is_an_antilinear_involution(inst in common::instance(), v in coeffs(6), lam in coeffs(1)) {
        let c = &inst.complex;
        let f = form20(c, &v);
        let s = c.sigma(&f);
        prop_assert_eq!(c.sigma(&s), f.clone());
        prop_assert_eq!(c.sigma(&f.scale(&lam[0])), s.scale(&lam[0].conj()));
        let (plus, minus) = c.sigma_decompose(&f).unwrap();
        prop_assert_eq!(plus.add(&minus), f);
        prop_assert_eq!(c.sigma(&plus), plus.clone());
        prop_assert_eq!(c.sigma(&minus), minus.neg());
        prop_assert_eq!(c.sigma_decompose(&plus).unwrap(), (plus.clone(), Form::zero()));
    }

    #[test]
    fn operator_squares_vanish_in_every_degree(inst in common::instance()) {
        let c = &inst.complex;
        for p in 0..c.half() {
            let m = |op, q| c.operator_matrix(op, q).unwrap().matrix;
            let (d0, d1) = (m(Operator::Del, p), m(Operator::Del, p + 1));
            let (j0, j1) = (m(Operator::DelJ, p), m(Operator::DelJ, p + 1));
            prop_assert!(d1.mul(&d0).is_zero());
            prop_assert!(j1.mul(&j0).is_zero());
            prop_assert!(d1.mul(&j0).add(&j1.mul(&d0)).is_zero());
        }
    }

    #[test]
    fn sigma_exchanges_del_and_delj_kernels(inst in common::instance()) {
        let c = &inst.complex;
        let dc = DelComplex::new(c).unwrap();
        let (kd, kj) = (dc.ker(Operator::Del, 2), dc.ker(Operator::DelJ, 2));
        prop_assert_eq!(kd.dim(), kj.dim());
        for v in kj.basis() {
            let img = c.sigma(&form20(c, v));
            prop_assert!(c.apply(Operator::Del, &img).unwrap().is_zero());
        }
    }

    #[test]
    fn real_forms_are_del_closed_iff_delj_closed(inst in common::instance(), v in coeffs(6)) {
        let c = &inst.complex;
        let dc = DelComplex::new(c).unwrap();
        let mut forms = vec![form20(c, &v)];
        forms.extend(dc.ker(Operator::Del, 2).basis().iter().map(|k| form20(c, k)));
        for f in forms {
            let real = f.add(&c.sigma(&f));
            let del = c.apply(Operator::Del, &real).unwrap().is_zero();
            let delj = c.apply(Operator::DelJ, &real).unwrap().is_zero();
            prop_assert_eq!(del, delj);
        }
    }

    #[test]
    fn nijenhuis_iff_no_leak(terms in proptest::collection::vec(proptest::collection::vec((0usize..4, -1i64..=1), 0..=2), 6)) {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let brackets: Vec<Bracket> = pairs
            .iter()
            .zip(terms)
            .map(|(&(i, j), ts)| {
                let mut m = std::collections::BTreeMap::new();
                for (k, c) in ts {
                    *m.entry(k).or_insert_with(|| int(0)) += int(c);
                }
                Bracket { i, j, terms: m.into_iter().collect() }
            })
            .collect();
        let g = LieAlgebra::new(4, None, &brackets).unwrap();
        let c = BigradedComplex::new(g, flat4(), None).unwrap();
        prop_assert_eq!(c.nijenhuis(Structure::I).integrable, c.no_02_leak());
    }
}

fn flat4() -> HypercomplexTriple {
    HypercomplexTriple::from_tables(4, &[(0, 1, 1), (2, 1, 3)], &[(0, 1, 2), (1, -1, 3)]).unwrap()
}

#[test]
fn j_sends_e1_to_e3_on_covectors() {
    let inst = build_family(&FamilySpec::new(FamilyId::Gt, &[("t", rat(1, 3))])).unwrap();
    let m = inst.triple().dual_action(Structure::J);
    let col: Vec<Scalar> = m.column(0);
    let mut want = vec![Scalar::zero(); 8];
    want[2] = Scalar::one();
    assert_eq!(col, want);
}

#[test]
fn j_swaps_every_bidegree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let insts = [
        build_family(&FamilySpec::new(FamilyId::Gt, &[("t", rat(1, 3))])).unwrap(),
        build_family(&FamilySpec::new(FamilyId::Nilpotent8, &[("t1", int(1)), ("t3", int(-1))])).unwrap(),
        block_instance(&random_almost_abelian(&mut rng, 2).unwrap()).unwrap(),
    ];
    for inst in &insts {
        let h = inst.complex.half();
        for p in 0..=h {
            for q in 0..=h {
                assert!(inst.complex.j_swaps_bidegree(p, q), "{} ({p},{q})", inst.label);
            }
        }
    }
}
