//! Hyperhermitian metrics: fundamental forms, HKT and hyperkähler tests,
//! and (in real dimension 8) the quaternionic Hodge star and the operator
//! `P` on invariant imaginary `(2,0)`-forms.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::families::sl_check;
use crate::forms::{Form, Grading, OperatorMatrix};
use crate::hypercomplex::{BigradedComplex, Operator, Structure};
use crate::instance::Instance;
use crate::linalg::{complexify, rat, FieldTag, Matrix, Rational, Scalar};

/// A validated hyperhermitian metric with its fundamental forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    pub gram: Matrix,
    pub gram_inv: Matrix,
    /// `ω_I, ω_J, ω_K` on the real generators `e^i`.
    pub omega: [Form; 3],
    /// `Ω = ω_J + iω_K` in the coframe.
    pub big_omega: Form,
    pub omega_real: bool,
    pub q_positive: bool,
}

impl Metric {
    pub fn omega(&self, s: Structure) -> &Form {
        &self.omega[s as usize]
    }
}

fn leading_minors_positive(m: &Matrix) -> bool {
    (1..=m.rows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        let d = m.select(&idx, &idx).determinant();
        d.im.is_zero() && d.re.is_positive()
    })
}

/// `ω_L = Σ_{i<j} g(Le_i, e_j) e^{ij}`.
fn fundamental_form(l: &Matrix, gram: &Matrix) -> Form {
    let w = l.transpose().mul(gram);
    let n = gram.rows();
    Form::from_terms((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (vec![i, j], w[(i, j)].clone())))
}

pub fn build_metric(c: &BigradedComplex, gram: &Matrix) -> Result<Metric> {
    let n = c.dim();
    if gram.rows() != n || gram.cols() != n {
        return Err(Error::DimensionMismatch(format!("gram is {}x{}, expected {n}x{n}", gram.rows(), gram.cols())));
    }
    if !gram.is_real() || gram.transpose() != *gram || !leading_minors_positive(gram) {
        return Err(Error::NotPositive);
    }
    for s in Structure::ALL {
        let l = c.triple.get(s);
        if l.transpose().mul(gram).mul(l) != *gram {
            return Err(Error::NotHermitian { which: s.name().into() });
        }
    }
    let omega = Structure::ALL.map(|s| fundamental_form(c.triple.get(s), gram));
    let big = c.from_e(&omega[1]).add(&c.from_e(&omega[2]).scale(&Scalar::i()));
    if c.components(&big).keys().any(|&k| k != (2, 0)) {
        return Err(Error::Leakage(format!("ω_J + iω_K has components {:?}", c.components(&big).keys())));
    }
    let omega_real = c.sigma(&big) == big;
    let q_positive = q_positive(c, &big);
    Ok(Metric { gram_inv: gram.inverse().expect("positive definite"), gram: gram.clone(), omega, big_omega: big, omega_real, q_positive })
}

/// Positivity of the hermitian matrix `H_ab = Ω(E_a, J Ē_b)` on the
/// `(1,0)`-vectors `E_a` dual to the coframe.
fn q_positive(c: &BigradedComplex, big: &Form) -> bool {
    let h = c.half();
    let q = c.theta_in_e().inverse().expect("coframe is a basis");
    let vec_e = |a: usize| q.row(a).to_vec();
    let om = c.to_e(big);
    let eval = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let mut s = Scalar::zero();
        for (idx, coef) in om.terms() {
            let (i, j) = (idx[0], idx[1]);
            s += &(coef * &(&(&x[i] * &y[j]) - &(&x[j] * &y[i])));
        }
        s
    };
    let j = &c.triple.j;
    let mut hm = Matrix::zeros(h, h);
    for a in 0..h {
        for b in 0..h {
            let ebar: Vec<Scalar> = vec_e(b).iter().map(Scalar::conj).collect();
            hm[(a, b)] = eval(&vec_e(a), &j.mul_vec(&ebar));
        }
    }
    hm.conj().transpose() == hm && leading_minors_positive(&hm)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HktReport {
    /// `∂Ω = 0`.
    pub method_a: bool,
    /// The three torsion forms coincide.
    pub method_b: bool,
    pub hkt: bool,
    pub del_omega: Form,
    /// `T_I, T_J, T_K` on the real generators.
    pub torsion: [Form; 3],
}

/// `T_L(x,y,z) = −g([Lx,Ly],z) − g([Ly,Lz],x) − g([Lz,Lx],y)`.
pub fn torsion_form(c: &BigradedComplex, gram: &Matrix, s: Structure) -> Form {
    let g = &c.algebra;
    let n = g.dim();
    let l = c.triple.get(s);
    let lv: Vec<Vec<Rational>> = (0..n).map(|a| l.column(a).into_iter().map(|x| x.re).collect()).collect();
    let br: Vec<Vec<Vec<Rational>>> = (0..n).map(|a| (0..n).map(|b| g.bracket(&lv[a], &lv[b])).collect()).collect();
    let gr = |v: &[Rational], k: usize| -> Rational { (0..n).map(|m| &v[m] * &gram[(m, k)].re).fold(Rational::zero(), |x, y| x + y) };
    let mut terms = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for k in b + 1..n {
                let v = -(gr(&br[a][b], k) + gr(&br[b][k], a) + gr(&br[k][a], b));
                terms.push((vec![a, b, k], Scalar::real(v)));
            }
        }
    }
    Form::from_terms(terms)
}

pub fn hkt_check(c: &BigradedComplex, m: &Metric) -> Result<HktReport> {
    c.require_integrable()?;
    let del_omega = c.apply(Operator::Del, &m.big_omega)?;
    let method_a = del_omega.is_zero();
    let torsion = Structure::ALL.map(|s| torsion_form(c, &m.gram, s));
    let method_b = torsion[0] == torsion[1] && torsion[1] == torsion[2];
    if method_a != method_b {
        return Err(Error::MethodDisagreement {
            check: "hkt".into(),
            detail: format!("∂Ω = 0 is {method_a}, torsion equality is {method_b}"),
        });
    }
    Ok(HktReport { method_a, method_b, hkt: method_a, del_omega, torsion })
}

pub fn hyperkahler_check(c: &BigradedComplex, m: &Metric) -> bool {
    let de = c.algebra.de();
    m.omega.iter().all(|w| w.derivation(&de).is_zero())
}

/// `g⁻¹`-pairing of two forms on the real generators (complex bilinear).
fn inverse_pairing(ginv: &Matrix, a: &Form, b: &Form) -> Scalar {
    let mut s = Scalar::zero();
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            if i.len() != j.len() {
                continue;
            }
            let d = ginv.select(i, j).determinant();
            if !d.is_zero() {
                s += &(&(x * y) * &d);
            }
        }
    }
    s
}

/// The anti-linear star on `Λ^{•,0}`, `n = 2` only:
/// `α ∧ ∗β = h(α,β) Ω²/2` with `h(α,β) = 2^{-p} g⁻¹(α, β̄)` on `(p,0)`-forms.
#[derive(Clone, Debug)]
pub struct HodgeStar {
    /// Complex matrices `S_p` (columns are `∗` of the basis monomials); `∗` acts
    /// by `v ↦ S_p v̄`.
    complex: Vec<Matrix>,
}

impl HodgeStar {
    pub fn new(inst: &Instance, m: &Metric) -> Result<Self> {
        let c = &inst.complex;
        if c.dim() != 8 {
            return Err(Error::Unsupported("the quaternionic star is implemented for real dimension 8".into()));
        }
        if !sl_check(inst)?.sl {
            return Err(Error::NoTrivializingForm);
        }
        let vol = m.big_omega.wedge(&m.big_omega).scale(&Scalar::real(rat(1, 2)));
        let top = [0usize, 1, 2, 3];
        let v = vol.coefficient(&top);
        let complex = (0..=4)
            .map(|p| {
                let src = c.basis(p, 0);
                let dual = c.basis(4 - p, 0);
                let w = Matrix::from_rows(
                    src.iter()
                        .map(|a| dual.iter().map(|b| c.theta(a).wedge(&c.theta(b)).coefficient(&top)).collect())
                        .collect(),
                );
                let w_inv = w.inverse().expect("wedge pairing is perfect");
                let weight = Scalar::real(rat(1, 1 << p));
                let es: Vec<Form> = src.iter().map(|a| c.to_e(&c.theta(a))).collect();
                let cols: Vec<Vec<Scalar>> = src
                    .iter()
                    .enumerate()
                    .map(|(bi, _)| {
                        let bbar = es[bi].map_coefficients(Scalar::conj);
                        let rhs: Vec<Scalar> =
                            es.iter().map(|ea| &(&inverse_pairing(&m.gram_inv, ea, &bbar) * &weight) * &v).collect();
                        w_inv.mul_vec(&rhs)
                    })
                    .collect();
                Matrix::from_columns(dual.len(), &cols)
            })
            .collect();
        Ok(HodgeStar { complex })
    }

    /// Anti-linear realified matrix `Λ^{p,0} → Λ^{4−p,0}`.
    pub fn matrix(&self, p: usize) -> OperatorMatrix {
        OperatorMatrix::realified(Grading::Bidegree(p, 0), Grading::Bidegree(4 - p, 0), self.complex[p].realify_antilinear())
    }

    pub fn apply(&self, c: &BigradedComplex, f: &Form, p: usize) -> Form {
        let v: Vec<Scalar> = c.coords(f, p).iter().map(Scalar::conj).collect();
        c.form_from_coords(&self.complex[p].mul_vec(&v), 4 - p)
    }
}

pub fn hodge_star_p0(inst: &Instance, m: &Metric, p: usize) -> Result<OperatorMatrix> {
    if p > 4 {
        return Err(Error::DegreeOutOfRange { degree: p, max: 4 });
    }
    Ok(HodgeStar::new(inst, m)?.matrix(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPReport {
    /// Real dimension of the σ-anti-fixed `(2,0)`-forms.
    pub imaginary_dim: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Form>,
    /// Dimension of `{α : σα = −α, ∗α = α}`.
    pub self_dual_imaginary_dim: usize,
    pub self_dual_imaginary_basis: Vec<Form>,
    /// Realified `Δ_∂` on `Λ^{2,0}`.
    pub laplacian: Matrix,
}

/// `P(α) = (∂∂^*α)^{J̄,−}` on imaginary invariant `(2,0)`-forms, `∂^* = −∗∂∗`.
pub fn operator_p_invariant(inst: &Instance, m: &Metric) -> Result<OperatorPReport> {
    let c = &inst.complex;
    c.require_integrable()?;
    let star = HodgeStar::new(inst, m)?;
    let del = |p: usize| c.operator_matrix(Operator::Del, p).expect("integrable").matrix.realify();
    let neg = |x: &Matrix| x.scale(&Scalar::from_i64(-1));
    // ∂^* : Λ^{p,0} → Λ^{p−1,0}
    let del_star = |p: usize| neg(&star.matrix(5 - p).matrix.mul(&del(4 - p)).mul(&star.matrix(p).matrix));
    let ddstar = del(1).mul(&del_star(2));
    let dstard = del_star(3).mul(&del(2));
    let laplacian = ddstar.add(&dstard);
    let sigma = c.sigma_matrix(2).matrix;
    let n = sigma.rows();
    let id = Matrix::identity(n);
    let imag = sigma.add(&id).kernel(FieldTag::Real);
    let proj = id.sub(&sigma).scale(&Scalar::real(rat(1, 2)));
    let p_op = proj.mul(&ddstar);
    let to_form = |v: &[Scalar]| c.form_from_coords(&complexify(v), 2);
    let (kernel_basis, kernel_dim) = if imag.dim() == 0 {
        (Vec::new(), 0)
    } else {
        let b = Matrix::from_columns(n, imag.basis());
        let k = p_op.mul(&b).kernel(FieldTag::Real);
        let vs: Vec<Vec<Scalar>> = k.basis().iter().map(|x| b.mul_vec(x)).collect();
        (vs.iter().map(|v| to_form(v)).collect(), vs.len())
    };
    let s2 = star.matrix(2).matrix;
    let self_dual = imag.intersect(&s2.sub(&id).kernel(FieldTag::Real));
    Ok(OperatorPReport {
        imaginary_dim: imag.dim(),
        kernel_dim,
        kernel_basis,
        self_dual_imaginary_dim: self_dual.dim(),
        self_dual_imaginary_basis: self_dual.basis().iter().map(|v| to_form(v)).collect(),
        laplacian,
    })
}

/// `h(α,β)` on `(p,0)`-forms given in the coframe.
pub fn hermitian_pairing(c: &BigradedComplex, m: &Metric, a: &Form, b: &Form, p: usize) -> Scalar {
    let bbar = c.to_e(&c.conj(b));
    &inverse_pairing(&m.gram_inv, &c.to_e(a), &bbar) * &Scalar::real(Rational::one() / Rational::from_integer((1i64 << p).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilyId, FamilySpec};
    use crate::linalg::int;

    fn nil(t: [i64; 4]) -> Instance {
        let p: Vec<(&str, Rational)> = ["t1", "t2", "t3", "t4"].iter().zip(t).map(|(n, v)| (*n, int(v))).collect();
        build_family(&FamilySpec::new(FamilyId::Nilpotent8, &p)).unwrap()
    }

    fn m(i: usize, j: usize) -> Form {
        Form::monomial(vec![i - 1, j - 1], Scalar::one())
    }

    #[test]
    fn flat_omega_and_star() {
        let inst = nil([0, 0, 0, 0]);
        let c = &inst.complex;
        let met = build_metric(c, &inst.gram).unwrap();
        assert_eq!(met.big_omega, m(1, 2).add(&m(3, 4)));
        assert!(met.omega_real && met.q_positive);
        assert_eq!(hermitian_pairing(c, &met, &met.big_omega, &met.big_omega, 2), Scalar::from_i64(2));
        let star = HodgeStar::new(&inst, &met).unwrap();
        assert_eq!(star.apply(c, &m(1, 2), 2), m(3, 4));
        assert_eq!(star.apply(c, &met.big_omega, 2), met.big_omega);
        let s = star.matrix(2).matrix;
        assert_eq!(s.mul(&s), Matrix::identity(s.rows()));
        assert!(hkt_check(c, &met).unwrap().hkt);
        assert!(hyperkahler_check(c, &met));
        let p = operator_p_invariant(&inst, &met).unwrap();
        assert_eq!(p.kernel_dim, p.imaginary_dim);
    }

    #[test]
    fn nilpotent_not_hkt() {
        let inst = nil([1, 0, 0, 0]);
        let met = build_metric(&inst.complex, &inst.gram).unwrap();
        let r = hkt_check(&inst.complex, &met).unwrap();
        assert!(!r.hkt && !r.method_b);
    }

    #[test]
    fn broken_gram_is_rejected() {
        let inst = nil([0, 0, 0, 0]);
        let mut g = Matrix::identity(8);
        g[(0, 0)] = Scalar::from_i64(2);
        assert!(matches!(build_metric(&inst.complex, &g), Err(Error::NotHermitian { .. })));
        g[(0, 0)] = Scalar::from_i64(-1);
        assert_eq!(build_metric(&inst.complex, &g), Err(Error::NotPositive));
    }
}
