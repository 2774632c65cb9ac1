mod common;

use hypercx::linalg::{quotient_dim, rat, FieldTag, Matrix, Scalar, Subspace};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    // mostly small integers, some zeros, occasional fractions and imaginary parts
    (-3i64..=3, 1i64..=3, -2i64..=2, any::<bool>()).prop_map(|(n, d, im, cx)| {
        if cx {
            Scalar::new(rat(n, d), rat(im, 1))
        } else {
            Scalar::real(rat(n, d))
        }
    })
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(scalar(), c), r).prop_map(Matrix::from_rows)
    })
}

/// Low-rank products, so ranks below min(rows, cols) are well represented.
fn low_rank(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max, 1..=3usize).prop_flat_map(|(r, c, k)| {
        (
            proptest::collection::vec(proptest::collection::vec(scalar(), k), r),
            proptest::collection::vec(proptest::collection::vec(scalar(), c), k),
        )
            .prop_map(|(a, b)| Matrix::from_rows(a).mul(&Matrix::from_rows(b)))
    })
}

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    proptest::collection::vec(proptest::collection::vec(scalar(), n), 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_oracle(m in prop_oneof![matrix(7), low_rank(7)]) {
        let r = m.rank();
        prop_assert_eq!(r, common::rank(&m));
        prop_assert_eq!(r, m.rank_fraction_free());
        prop_assert_eq!(m.transpose().rank(), r);
    }

    #[test]
    fn rank_nullity(m in low_rank(6)) {
        let k = m.kernel(FieldTag::Complex);
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(m.image(FieldTag::Complex).dim(), m.rank());
    }

    #[test]
    fn realify_doubles(vs in vectors(4, 4)) {
        let s = Subspace::span(4, vs, FieldTag::Complex);
        prop_assert_eq!(s.realify().unwrap().dim(), 2 * s.dim());
    }

    #[test]
    fn quotient_plus_denominator(vs in vectors(5, 5), keep in 0usize..=5) {
        let a = Subspace::span(5, vs.clone(), FieldTag::Complex);
        let b = Subspace::span(5, vs.into_iter().take(keep).collect(), FieldTag::Complex);
        let q = quotient_dim(&a, &b).unwrap();
        prop_assert_eq!(q.dim + b.dim(), a.dim());
        // representatives really are independent modulo b
        let both = Subspace::span(5, [b.basis().to_vec(), q.representatives.clone()].concat(), FieldTag::Complex);
        prop_assert_eq!(both.dim(), a.dim());
    }

    #[test]
    fn sum_and_intersection(u in vectors(4, 3), v in vectors(4, 3)) {
        let u = Subspace::span(4, u, FieldTag::Complex);
        let v = Subspace::span(4, v, FieldTag::Complex);
        let (s, i) = (u.sum(&v), u.intersect(&v));
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.contains_subspace(&u) && u.contains_subspace(&i) && v.contains_subspace(&i));
    }
}

#[test]
fn quotient_requires_containment() {
    let e1 = Subspace::span(2, vec![vec![Scalar::one(), Scalar::zero()]], FieldTag::Complex);
    let e2 = Subspace::span(2, vec![vec![Scalar::zero(), Scalar::one()]], FieldTag::Complex);
    assert_eq!(quotient_dim(&e1, &e2).unwrap_err().code(), "DEN_NOT_CONTAINED");
    assert_eq!(e1.realify().unwrap().realify().unwrap_err().code(), "ALREADY_REAL");
}
