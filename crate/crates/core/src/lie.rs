//! Lie algebras given by structure constants, and their Chevalley–Eilenberg
//! complex.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{exterior_basis, matrix_of, Form, Grading, OperatorMatrix};
use crate::linalg::{FieldTag, Matrix, Rational, Scalar, Subspace};

/// `[e_i, e_j] = Σ_k c^k_{ij} e_k` with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// `c[i][j][k] = c^k_{ij}`
    c: Vec<Vec<Vec<Rational>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiResult {
    pub holds: bool,
    /// First basis triple `(i, j, k)`, `i < j < k`, with a nonzero Jacobiator.
    pub violation: Option<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesResult {
    pub dims: Vec<usize>,
    /// True iff the series reaches zero.
    pub terminates: bool,
}

#[derive(Clone, Debug)]
pub struct AbelianIdeal {
    pub ideal: Subspace,
    /// A covector whose kernel is the ideal.
    pub annihilator: Vec<Rational>,
    /// Dimension of the space of covectors cutting out codimension-1 abelian ideals.
    pub candidate_dim: usize,
}

impl LieAlgebra {
    /// Builds the algebra from a sparse bracket list. Unlisted brackets are
    /// zero; `[e_j, e_i]` is filled by antisymmetry. Does not check Jacobi.
    pub fn new(dim: usize, labels: Option<Vec<String>>, brackets: &[Bracket]) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| (1..=dim).map(|i| format!("e{i}")).collect());
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra(format!("{} labels for dimension {dim}", labels.len())));
        }
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        let mut seen = vec![vec![false; dim]; dim];
        for b in brackets {
            if b.i >= dim || b.j >= dim {
                return Err(Error::InvalidAlgebra(format!("bracket index out of range: [{}, {}]", b.i + 1, b.j + 1)));
            }
            if b.i == b.j {
                if b.terms.iter().any(|(_, x)| !x.is_zero()) {
                    return Err(Error::InvalidAlgebra(format!("[e{0}, e{0}] must vanish", b.i + 1)));
                }
                continue;
            }
            if seen[b.i][b.j] {
                return Err(Error::InvalidAlgebra(format!("bracket [e{}, e{}] given twice", b.i + 1, b.j + 1)));
            }
            seen[b.i][b.j] = true;
            seen[b.j][b.i] = true;
            for (k, x) in &b.terms {
                if *k >= dim {
                    return Err(Error::InvalidAlgebra(format!("bracket target index {} out of range", k + 1)));
                }
                c[b.i][b.j][*k] += x;
                c[b.j][b.i][*k] -= x;
            }
        }
        Ok(LieAlgebra { dim, labels, c })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, None, &[]).expect("abelian algebra is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn brackets(&self) -> Vec<Bracket> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let terms: Vec<(usize, Rational)> =
                    (0..self.dim).filter(|&k| !self.c[i][j][k].is_zero()).map(|k| (k, self.c[i][j][k].clone())).collect();
                if !terms.is_empty() {
                    out.push(Bracket { i, j, terms });
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.c[i][j].clone()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    /// Complex-coefficient bracket, used for subspace computations.
    pub fn bracket_scalar(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i == j || x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    if !c.is_zero() {
                        *o += &s.scale(c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_{e_i}`.
    pub fn ad(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                m[(k, j)] = Scalar::real(self.c[i][j][k].clone());
            }
        }
        m
    }

    pub fn validate_jacobi(&self) -> JacobiResult {
        let n = self.dim;
        let e = |i: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::from_integer(1.into());
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&e(i), &self.c[j][k]);
                    let b = self.bracket(&e(j), &self.c[k][i]);
                    let c = self.bracket(&e(k), &self.c[i][j]);
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return JacobiResult { holds: false, violation: Some((i, j, k)) };
                    }
                }
            }
        }
        JacobiResult { holds: true, violation: None }
    }

    /// `d e^k = −Σ_{i<j} c^k_{ij} e^i ∧ e^j`, from `dα(x,y) = −α([x,y])`.
    pub fn de(&self) -> Vec<Form> {
        (0..self.dim)
            .map(|k| {
                let mut f = Form::zero();
                for i in 0..self.dim {
                    for j in i + 1..self.dim {
                        let c = &self.c[i][j][k];
                        if !c.is_zero() {
                            f += &Form::monomial(vec![i, j], Scalar::real(-c.clone()));
                        }
                    }
                }
                f
            })
            .collect()
    }

    /// `d: Λ^k → Λ^{k+1}` in lexicographic bases.
    pub fn ce_differential(&self, k: usize) -> Result<OperatorMatrix> {
        if k > self.dim {
            return Err(Error::DegreeOutOfRange { degree: k, max: self.dim });
        }
        let de = self.de();
        let src = exterior_basis(self.dim, k);
        let tgt = exterior_basis(self.dim, k + 1);
        let m = matrix_of(&src, &tgt, |f| f.derivation(&de));
        Ok(OperatorMatrix::complex(Grading::Degree(k), Grading::Degree(k + 1), m))
    }

    /// True iff `tr ad_x = 0` for every basis vector.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).map(|k| &self.c[i][k][k]).fold(Rational::zero(), |a, b| a + b).is_zero())
    }

    pub fn trace_ad(&self, i: usize) -> Rational {
        (0..self.dim).map(|k| &self.c[i][k][k]).fold(Rational::zero(), |a, b| a + b)
    }

    fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vecs.push(self.bracket_scalar(x, y));
            }
        }
        Subspace::span(self.dim, vecs, FieldTag::Complex)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim, FieldTag::Complex);
        self.bracket_span(&full, &full)
    }

    /// `𝔤 ⊇ [𝔤,𝔤] ⊇ [𝔤,[𝔤,𝔤]] ⊇ …` until it stabilizes.
    pub fn lower_central_series(&self) -> SeriesResult {
        let full = Subspace::full(self.dim, FieldTag::Complex);
        self.series(|cur| self.bracket_span(&full, cur))
    }

    pub fn derived_series(&self) -> SeriesResult {
        self.series(|cur| self.bracket_span(cur, cur))
    }

    fn series(&self, next: impl Fn(&Subspace) -> Subspace) -> SeriesResult {
        let mut cur = Subspace::full(self.dim, FieldTag::Complex);
        let mut dims = vec![cur.dim()];
        while !cur.is_zero() {
            let n = next(&cur);
            if n.dim() == cur.dim() {
                return SeriesResult { dims, terminates: false };
            }
            dims.push(n.dim());
            cur = n;
        }
        SeriesResult { dims, terminates: true }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().terminates
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().terminates
    }

    /// Codimension-one abelian ideals are exactly the kernels of nonzero
    /// covectors `ξ` with `dξ = 0` and `ξ ∧ de^k = 0` for all `k`. These
    /// conditions are linear in `ξ`; the first echelon basis vector of the
    /// solution space is used.
    pub fn find_codim1_abelian_ideal(&self) -> Option<AbelianIdeal> {
        let n = self.dim;
        let de = self.de();
        let ones = exterior_basis(n, 1);
        let twos = exterior_basis(n, 2);
        let threes = exterior_basis(n, 3);
        let mut blocks = vec![matrix_of(&ones, &twos, |f| f.derivation(&de))];
        for dk in &de {
            blocks.push(matrix_of(&ones, &threes, |f| f.wedge(dk)));
        }
        let stacked = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.vstack(b));
        let candidates = stacked.kernel(FieldTag::Complex);
        let xi = candidates.basis().first()?.clone();
        let ideal = Matrix::from_rows(vec![xi.clone()]).kernel(FieldTag::Complex);
        Some(AbelianIdeal {
            ideal,
            annihilator: xi.into_iter().map(|s| s.re).collect(),
            candidate_dim: candidates.dim(),
        })
    }
}
