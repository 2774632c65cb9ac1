use std::collections::BTreeMap;

use itertools::Itertools;

use super::{nijenhuis_tensor, one_zero_coframe, theta_matrix, ComplexCoframe, HypercomplexTriple, NijenhuisReport, Structure};
use crate::error::{Error, Result};
use crate::forms::{exterior_basis, matrix_of, render_form, Form, Grading, OperatorMatrix};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    D,
    Del,
    Delbar,
    DelJ,
}

/// Invariant forms of a hypercomplex Lie algebra written in the generators
/// `θ^a`: `θ^a = φ^a` for `a < 2n` and `θ^{a+2n} = conj(φ^a)`.
///
/// A monomial `θ^I` has bidegree `(p, q)` with `p = #{i ∈ I : i < 2n}`.
#[derive(Clone, Debug)]
pub struct BigradedComplex {
    pub algebra: LieAlgebra,
    pub triple: HypercomplexTriple,
    pub coframe: ComplexCoframe,
    /// Columns are the `θ^a` in `e`-coordinates.
    p: Matrix,
    q: Matrix,
    dtheta: Vec<Form>,
    actions: [Vec<Form>; 3],
    j_inverse: Vec<Form>,
    nijenhuis: [NijenhuisReport; 3],
}

impl BigradedComplex {
    pub fn new(algebra: LieAlgebra, triple: HypercomplexTriple, coframe: Option<Vec<Vec<Scalar>>>) -> Result<Self> {
        if algebra.dim() != triple.dim() {
            return Err(Error::DimensionMismatch(format!(
                "algebra has dimension {}, structures act on dimension {}",
                algebra.dim(),
                triple.dim()
            )));
        }
        let coframe = one_zero_coframe(&triple, coframe)?;
        let p = theta_matrix(&coframe.forms);
        let q = p.inverse().expect("coframe validated to span the dual");
        let images = |m: &Matrix| -> Vec<Form> {
            let t = q.mul(m).mul(&p);
            (0..t.cols()).map(|a| Form::from_vector(&exterior_basis(t.rows(), 1), &t.column(a))).collect()
        };
        let actions = Structure::ALL.map(|s| images(&triple.dual_action(s)));
        let j_inverse = images(&triple.dual_action(Structure::J).scale(&Scalar::from_i64(-1)));
        let nijenhuis = Structure::ALL.map(|s| nijenhuis_tensor(&algebra, triple.get(s)));
        let mut out = BigradedComplex { algebra, triple, coframe, p, q, dtheta: Vec::new(), actions, j_inverse, nijenhuis };
        let de = out.algebra.de();
        out.dtheta = (0..out.dim())
            .map(|a| {
                let mut f = Form::zero();
                for i in 0..out.dim() {
                    f += &de[i].scale(&out.p[(i, a)]);
                }
                out.from_e(&f)
            })
            .collect();
        Ok(out)
    }

    /// Real dimension `4n`.
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Complex dimension `2n`.
    pub fn half(&self) -> usize {
        self.dim() / 2
    }

    pub fn nijenhuis(&self, s: Structure) -> &NijenhuisReport {
        &self.nijenhuis[s as usize]
    }

    pub fn is_integrable(&self) -> bool {
        self.nijenhuis.iter().all(|r| r.integrable)
    }

    pub fn require_integrable(&self) -> Result<()> {
        for s in Structure::ALL {
            if !self.nijenhuis(s).integrable {
                return Err(Error::NotIntegrable { which: s.name().into() });
            }
        }
        Ok(())
    }

    /// `θ`-matrix `P` (columns `θ^a` in `e`-coordinates).
    pub fn theta_in_e(&self) -> &Matrix {
        &self.p
    }

    /// Rewrites a form on the real generators `e^i` in the `θ^a`.
    pub fn from_e(&self, f: &Form) -> Form {
        let images: Vec<Form> = (0..self.dim())
            .map(|i| Form::from_terms((0..self.dim()).map(|a| (vec![a], self.q[(a, i)].clone()))))
            .collect();
        f.substitute(&images)
    }

    /// Rewrites a `θ`-form on the real generators.
    pub fn to_e(&self, f: &Form) -> Form {
        let images: Vec<Form> = (0..self.dim())
            .map(|a| Form::from_terms((0..self.dim()).map(|i| (vec![i], self.p[(i, a)].clone()))))
            .collect();
        f.substitute(&images)
    }

    pub fn bidegree(&self, idx: &[usize]) -> (usize, usize) {
        let p = idx.iter().filter(|&&a| a < self.half()).count();
        (p, idx.len() - p)
    }

    /// Lexicographic basis of `A^{p,q}`.
    pub fn basis(&self, p: usize, q: usize) -> Vec<Vec<usize>> {
        let h = self.half();
        (0..h)
            .combinations(p)
            .cartesian_product((h..2 * h).combinations(q).collect::<Vec<_>>())
            .map(|(a, b)| [a, b].concat())
            .collect()
    }

    /// Basis of all `k`-forms in `θ`-generators.
    pub fn total_basis(&self, k: usize) -> Vec<Vec<usize>> {
        exterior_basis(self.dim(), k)
    }

    pub fn components(&self, f: &Form) -> BTreeMap<(usize, usize), Form> {
        let mut out: BTreeMap<(usize, usize), Form> = BTreeMap::new();
        for (idx, c) in f.terms() {
            *out.entry(self.bidegree(idx)).or_default() += &Form::monomial(idx.clone(), c.clone());
        }
        out
    }

    pub fn project(&self, f: &Form, p: usize, q: usize) -> Form {
        f.filter(|idx| self.bidegree(idx) == (p, q))
    }

    pub fn d(&self, f: &Form) -> Form {
        f.derivation(&self.dtheta)
    }

    pub fn conj(&self, f: &Form) -> Form {
        let h = self.half();
        f.conjugate_with(|a| if a < h { a + h } else { a - h })
    }

    /// Induced action `(Lα)(x₁,…) = α(L⁻¹x₁,…)`.
    pub fn act(&self, s: Structure, f: &Form) -> Form {
        f.substitute(&self.actions[s as usize])
    }

    pub fn act_j_inverse(&self, f: &Form) -> Form {
        f.substitute(&self.j_inverse)
    }

    /// `σ(φ) = J φ̄`.
    pub fn sigma(&self, f: &Form) -> Form {
        self.act(Structure::J, &self.conj(f))
    }

    fn pure_degree(&self, f: &Form) -> Option<(usize, usize)> {
        let comps = self.components(f);
        match comps.len() {
            0 => None,
            1 => comps.keys().next().copied(),
            _ => Some((usize::MAX, usize::MAX)),
        }
    }

    fn expect_p0(&self, f: &Form) -> Result<usize> {
        match self.pure_degree(f) {
            None => Ok(0),
            Some((p, 0)) if p != usize::MAX => Ok(p),
            Some(found) => Err(Error::WrongDegree {
                expected: "(p,0)".into(),
                found: if found.0 == usize::MAX { "mixed".into() } else { format!("({},{})", found.0, found.1) },
            }),
        }
    }

    /// `d` of a `(p,0)`-form, split into its `(p+1,0)` and `(p,1)` parts.
    fn split_d(&self, f: &Form, p: usize) -> Result<(Form, Form)> {
        let df = self.d(f);
        let del = self.project(&df, p + 1, 0);
        let delbar = self.project(&df, p, 1);
        let rest = df.sub(&del).sub(&delbar);
        if !rest.is_zero() {
            return Err(Error::Leakage(format!("d of a ({p},0)-form has components {:?}", self.components(&rest).keys())));
        }
        Ok((del, delbar))
    }

    /// Applies one of the operators to a `(p,0)`-form (zero counts as any `p`).
    pub fn apply(&self, op: Operator, f: &Form) -> Result<Form> {
        if f.is_zero() {
            return Ok(Form::zero());
        }
        let p = self.expect_p0(f)?;
        match op {
            Operator::D => Ok(self.d(f)),
            Operator::Del => Ok(self.split_d(f, p)?.0),
            Operator::Delbar => Ok(self.split_d(f, p)?.1),
            Operator::DelJ => {
                let jf = self.act(Structure::J, f);
                let djf = self.d(&jf);
                let bar = self.project(&djf, 0, p + 1);
                let rest = djf.sub(&bar).sub(&self.project(&djf, 1, p));
                if !rest.is_zero() {
                    return Err(Error::Leakage(format!("d of a (0,{p})-form has components {:?}", self.components(&rest).keys())));
                }
                Ok(self.act_j_inverse(&bar))
            }
        }
    }

    /// Matrix of `op` on `A^{p,0}`. Requires an integrable structure.
    pub fn operator_matrix(&self, op: Operator, p: usize) -> Result<OperatorMatrix> {
        self.require_integrable()?;
        let h = self.half();
        if p > h {
            return Err(Error::DegreeOutOfRange { degree: p, max: h });
        }
        let src = self.basis(p, 0);
        let (tgt, grading) = match op {
            Operator::D => (self.total_basis(p + 1), Grading::Degree(p + 1)),
            Operator::Del | Operator::DelJ => (self.basis(p + 1, 0), Grading::Bidegree(p + 1, 0)),
            Operator::Delbar => (self.basis(p, 1), Grading::Bidegree(p, 1)),
        };
        let mut cols = Vec::with_capacity(src.len());
        for idx in &src {
            let img = self.apply(op, &Form::monomial(idx.clone(), Scalar::one()))?;
            cols.push(img.to_vector(&tgt));
        }
        Ok(OperatorMatrix::complex(Grading::Bidegree(p, 0), grading, Matrix::from_columns(tgt.len(), &cols)))
    }

    /// Realified matrix of the anti-linear `σ` on `A^{p,0}`.
    pub fn sigma_matrix(&self, p: usize) -> OperatorMatrix {
        let b = self.basis(p, 0);
        let m = matrix_of(&b, &b, |f| self.sigma(f));
        OperatorMatrix::realified(Grading::Bidegree(p, 0), Grading::Bidegree(p, 0), m.realify_antilinear())
    }

    /// `φ = φ₊ + φ₋` with `σφ₊ = φ₊`, `σφ₋ = −φ₋`.
    pub fn sigma_decompose(&self, f: &Form) -> Result<(Form, Form)> {
        if !f.is_zero() && self.pure_degree(f) != Some((2, 0)) {
            return Err(Error::WrongDegree { expected: "(2,0)".into(), found: format!("{:?}", self.components(f).keys()) });
        }
        let half = Scalar::real(crate::linalg::rat(1, 2));
        let s = self.sigma(f);
        Ok((f.add(&s).scale(&half), f.sub(&s).scale(&half)))
    }

    /// True iff `d(A^{1,0})` has no `(0,2)` component.
    pub fn no_02_leak(&self) -> bool {
        (0..self.half()).all(|a| self.project(&self.dtheta[a], 0, 2).is_zero())
    }

    /// True iff `J` maps every basis form of `A^{p,q}` into `A^{q,p}`.
    pub fn j_swaps_bidegree(&self, p: usize, q: usize) -> bool {
        self.basis(p, q).into_iter().all(|idx| {
            let img = self.act(Structure::J, &Form::monomial(idx, Scalar::one()));
            let ok = img.terms().all(|(i, _)| self.bidegree(i) == (q, p));
            ok
        })
    }

    /// Coordinates of a `(p,0)`-form in the lexicographic basis.
    pub fn coords(&self, f: &Form, p: usize) -> Vec<Scalar> {
        f.to_vector(&self.basis(p, 0))
    }

    pub fn form_from_coords(&self, v: &[Scalar], p: usize) -> Form {
        Form::from_vector(&self.basis(p, 0), v)
    }

    /// Human-readable form in the coframe, e.g. `phi13 + (1/2-i) phi1b2`.
    /// Indices are 1-based, a `b` marks a conjugate generator.
    pub fn render(&self, f: &Form) -> String {
        let h = self.half();
        let sep = if h >= 10 { "." } else { "" };
        render_form(f, |idx| {
            let toks = idx.iter().map(|&a| if a < h { (a + 1).to_string() } else { format!("b{}", a - h + 1) }).join(sep);
            format!("phi{toks}")
        })
    }

    /// `θ^{a₁} ∧ …` from 0-based coframe indices (conjugates are `a + 2n`).
    pub fn theta(&self, idx: &[usize]) -> Form {
        Form::monomial(idx.to_vec(), Scalar::one())
    }
}
