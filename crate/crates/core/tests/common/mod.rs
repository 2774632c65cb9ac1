//! Test-side oracles shared by the integration tests. Nothing here calls the
//! library's elimination routines.
#![allow(dead_code)]

use hypercx::cohomology::CohomologyKind;
use hypercx::hypercomplex::{BigradedComplex, Operator};
use hypercx::linalg::{Matrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Gaussian rational as a plain pair.
#[derive(Clone, Debug, PartialEq)]
pub struct C(pub Rational, pub Rational);

impl C {
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn mul(&self, o: &C) -> C {
        C(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn sub(&self, o: &C) -> C {
        C(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn inv(&self) -> C {
        let n = &self.0 * &self.0 + &self.1 * &self.1;
        C(&self.0 / &n, -&self.1 / &n)
    }
}

pub fn to_rows(m: &Matrix) -> Vec<Vec<C>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| C(x.re.clone(), x.im.clone())).collect()).collect()
}

/// Rank over ℚ(i) via the realified integer matrix `[[A, −B], [B, A]]`
/// (whose rank is twice the complex rank), eliminated over ℤ by two-step
/// exact division (each entry stays a minor), pivoting on the *last* row with
/// a nonzero entry in each column. Representation and pivot order both differ
/// from the library's.
pub fn naive_rank(a: Vec<Vec<C>>) -> usize {
    if a.is_empty() || a[0].is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(2 * a.len());
    for row in &a {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.0.denom()).lcm(x.1.denom()));
        let int = |q: &Rational| (q * Rational::from_integer(l.clone())).to_integer();
        let re: Vec<BigInt> = row.iter().map(|x| int(&x.0)).collect();
        let im: Vec<BigInt> = row.iter().map(|x| int(&x.1)).collect();
        rows.push(re.iter().cloned().chain(im.iter().map(|x| -x)).collect());
        rows.push(im.into_iter().chain(re).collect());
    }
    let width = rows[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..rows.len()).rev().find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for k in c + 1..width {
                let v = &row[k] * &pivot[c] - &f * &pivot[k];
                debug_assert!((&v % &prev).is_zero());
                row[k] = v / &prev;
            }
        }
        prev = pivot[c].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    assert!(rank % 2 == 0, "realified rank must be even");
    rank / 2
}

pub fn rank(m: &Matrix) -> usize {
    naive_rank(to_rows(m))
}

fn zeros(r: usize, c: usize) -> Vec<Vec<C>> {
    vec![vec![C(Rational::zero(), Rational::zero()); c]; r]
}

fn matmul(a: &[Vec<C>], b: &[Vec<C>], inner: usize, cols: usize) -> Vec<Vec<C>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = C(Rational::zero(), Rational::zero());
                    for k in 0..inner {
                        let t = row[k].mul(&b[k][j]);
                        acc = C(&acc.0 + &t.0, &acc.1 + &t.1);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Operator matrix `A^{p,0} → A^{p+1,0}` as oracle rows, empty outside range.
fn op(c: &BigradedComplex, o: Operator, p: isize) -> (Vec<Vec<C>>, usize, usize) {
    let dim = |q: isize| if q < 0 { 0 } else { c.basis(q as usize, 0).len() };
    if p < 0 || p as usize > c.half() {
        return (zeros(dim(p + 1), dim(p)), dim(p + 1), dim(p));
    }
    let m = c.operator_matrix(o, p as usize).unwrap().matrix;
    (to_rows(&m), m.rows(), m.cols())
}

fn rank_of(m: &(Vec<Vec<C>>, usize, usize)) -> usize {
    naive_rank(m.0.clone())
}

/// `dim H^{p,0}` from ranks alone:
/// `dim ker A − rank B` for `ker A / im B`.
pub fn cohomology_dim(c: &BigradedComplex, kind: CohomologyKind, p: usize) -> usize {
    let p = p as isize;
    let n = c.basis(p as usize, 0).len();
    let del = |q| op(c, Operator::Del, q);
    let delj = |q| op(c, Operator::DelJ, q);
    let ddj = |q: isize| {
        let a = delj(q);
        let b = del(q + 1);
        (matmul(&b.0, &a.0, a.1, a.2), b.1, a.2)
    };
    match kind {
        CohomologyKind::Dolbeault => n - rank_of(&del(p)) - rank_of(&del(p - 1)),
        CohomologyKind::DelJ => n - rank_of(&delj(p)) - rank_of(&delj(p - 1)),
        CohomologyKind::BottChern => {
            let (a, b) = (del(p), delj(p));
            let stacked: Vec<Vec<C>> = a.0.into_iter().chain(b.0).collect();
            let k = if stacked.is_empty() { 0 } else { naive_rank(stacked) };
            n - k - rank_of(&ddj(p - 2))
        }
        CohomologyKind::Aeppli => {
            let (a, b) = (del(p - 1), delj(p - 1));
            let side: Vec<Vec<C>> = a.0.into_iter().zip(b.0).map(|(x, y)| [x, y].concat()).collect();
            n - rank_of(&ddj(p)) - if side.is_empty() { 0 } else { naive_rank(side) }
        }
    }
}

pub fn one() -> Rational {
    Rational::one()
}

/// A mix of the three families and random block instances (quaternionic
/// dimension 1 or 2), all integrable.
pub fn instance() -> impl proptest::strategy::Strategy<Value = hypercx::instance::Instance> {
    use hypercx::families::{block_instance, build_family, random_almost_abelian, FamilyId, FamilySpec};
    use hypercx::linalg::{int, rat};
    use proptest::prelude::*;
    use rand::SeedableRng;
    prop_oneof![
        (1i64..=5).prop_map(|k| build_family(&FamilySpec::new(FamilyId::Gt, &[("t", rat(k, 6))])).unwrap()),
        proptest::collection::vec(-1i64..=1, 4).prop_map(|t| {
            let p: Vec<(&str, Rational)> = ["t1", "t2", "t3", "t4"].into_iter().zip(t).map(|(n, v)| (n, int(v))).collect();
            build_family(&FamilySpec::new(FamilyId::Nilpotent8, &p)).unwrap()
        }),
        (any::<u64>(), 1usize..=2).prop_map(|(seed, n)| {
            let d = random_almost_abelian(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n).unwrap();
            block_instance(&d).unwrap()
        }),
    ]
}
