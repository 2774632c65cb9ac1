//! Hypercomplex triples, integrability, (1,0)-coframes and the bigraded
//! complex of invariant forms.

mod bigraded;

pub use bigraded::{BigradedComplex, Operator};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{exterior_basis, matrix_of, Form};
use crate::lie::LieAlgebra;
use crate::linalg::{FieldTag, Matrix, Rational, Scalar, Subspace};

/// `(I, J, K)` acting on column vectors of the algebra, `K = IJ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercomplexTriple {
    pub i: Matrix,
    pub j: Matrix,
    pub k: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    I,
    J,
    K,
}

impl Structure {
    pub const ALL: [Structure; 3] = [Structure::I, Structure::J, Structure::K];

    pub fn name(self) -> &'static str {
        match self {
            Structure::I => "I",
            Structure::J => "J",
            Structure::K => "K",
        }
    }
}

impl HypercomplexTriple {
    /// Validates `I² = J² = −1` and `IJ = −JI`; `K` is always derived as `IJ`.
    pub fn check(dim: usize, i: Matrix, j: Matrix) -> Result<Self> {
        for (m, name) in [(&i, "I"), (&j, "J")] {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, algebra has dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_real() {
                return Err(Error::InvalidAlgebra(format!("{name} must have rational entries")));
            }
        }
        if dim % 4 != 0 || dim == 0 {
            return Err(Error::DimensionMismatch(format!("hypercomplex dimension must be a positive multiple of 4, got {dim}")));
        }
        let minus_id = Matrix::identity(dim).scale(&Scalar::from_i64(-1));
        if i.mul(&i) != minus_id {
            return Err(Error::NotAlmostComplex { which: "I".into() });
        }
        if j.mul(&j) != minus_id {
            return Err(Error::NotAlmostComplex { which: "J".into() });
        }
        let k = i.mul(&j);
        if j.mul(&i) != k.scale(&Scalar::from_i64(-1)) {
            return Err(Error::NotAnticommuting);
        }
        Ok(HypercomplexTriple { i, j, k })
    }

    pub fn get(&self, s: Structure) -> &Matrix {
        match s {
            Structure::I => &self.i,
            Structure::J => &self.j,
            Structure::K => &self.k,
        }
    }

    pub fn dim(&self) -> usize {
        self.i.rows()
    }

    /// Triple from signed permutation tables `L e_a = ± e_b` (0-based),
    /// given for half of the basis; the rest follows from `L² = −1`.
    pub fn from_tables(dim: usize, i: &[(usize, i64, usize)], j: &[(usize, i64, usize)]) -> Result<Self> {
        HypercomplexTriple::check(dim, complex_structure_from_table(dim, i), complex_structure_from_table(dim, j))
    }

    /// `[Lx, Ly] = [x, y]` for each of `I`, `J`, `K`.
    pub fn is_abelian(&self, g: &LieAlgebra) -> bool {
        Structure::ALL.iter().all(|&s| {
            let l = self.get(s);
            (0..g.dim()).all(|a| {
                (a + 1..g.dim()).all(|b| g.bracket(&column(l, a), &column(l, b)) == g.bracket_basis(a, b))
            })
        })
    }

    /// Matrix of the induced action on covectors: `(Lα)(x) = α(L⁻¹x)`,
    /// i.e. `(L⁻¹)ᵀ = −Lᵀ` in dual coordinates.
    pub fn dual_action(&self, s: Structure) -> Matrix {
        self.get(s).transpose().scale(&Scalar::from_i64(-1))
    }
}

fn complex_structure_from_table(dim: usize, table: &[(usize, i64, usize)]) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for &(a, sign, b) in table {
        m[(b, a)] = Scalar::from_i64(sign);
        m[(a, b)] = Scalar::from_i64(-sign);
    }
    m
}

pub(crate) fn column(m: &Matrix, j: usize) -> Vec<Rational> {
    m.column(j).into_iter().map(|x| x.re).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisReport {
    pub integrable: bool,
    /// Nonzero values `N_L(e_a, e_b)` for `a < b`.
    pub nonzero: Vec<(usize, usize, Vec<Rational>)>,
}

/// `N_L(Y,Z) = [Y,Z] + L([LY,Z] + [Y,LZ]) − [LY,LZ]` on basis pairs.
pub fn nijenhuis_tensor(g: &LieAlgebra, l: &Matrix) -> NijenhuisReport {
    let n = g.dim();
    let apply = |v: &[Rational]| -> Vec<Rational> {
        (0..n)
            .map(|r| (0..n).fold(Rational::zero(), |acc, c| acc + &l[(r, c)].re * &v[c]))
            .collect()
    };
    let e = |a: usize| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[a] = Rational::from_integer(1.into());
        v
    };
    let mut nonzero = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (y, z) = (e(a), e(b));
            let (ly, lz) = (column(l, a), column(l, b));
            let inner: Vec<Rational> =
                g.bracket(&ly, &z).iter().zip(g.bracket(&y, &lz)).map(|(p, q)| p + q).collect();
            let applied = apply(&inner);
            let lyz = g.bracket(&ly, &lz);
            let val: Vec<Rational> = g
                .bracket_basis(a, b)
                .iter()
                .zip(&applied)
                .zip(&lyz)
                .map(|((x, p), q)| x + p - q)
                .collect();
            if val.iter().any(|x| !x.is_zero()) {
                nonzero.push((a, b, val));
            }
        }
    }
    NijenhuisReport { integrable: nonzero.is_empty(), nonzero }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    UserSupplied,
    AutoConstructed,
}

/// `2n` complex covectors of type (1,0) for `I`, in `e`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexCoframe {
    pub forms: Vec<Vec<Scalar>>,
    pub provenance: Provenance,
}

/// Validates a supplied coframe or builds one.
///
/// The automatic construction walks the real dual basis in order; each
/// `ε` not yet covered contributes `φ = ε + i·Iε` and its partner `Jφ̄`, so
/// the coframe comes in adjacent pairs `(φ^{2k−1}, Jφ̄^{2k−1})`.
pub fn one_zero_coframe(triple: &HypercomplexTriple, user: Option<Vec<Vec<Scalar>>>) -> Result<ComplexCoframe> {
    let dim = triple.dim();
    let half = dim / 2;
    let it = triple.i.transpose();
    if let Some(forms) = user {
        if forms.len() != half {
            return Err(Error::BadCoframe(format!("expected {half} forms, got {}", forms.len())));
        }
        for (a, phi) in forms.iter().enumerate() {
            if phi.len() != dim {
                return Err(Error::BadCoframe(format!("form {} has {} coordinates, expected {dim}", a + 1, phi.len())));
            }
            // φ(Ix) = iφ(x)  ⇔  Iᵀφ = iφ
            let lhs = it.mul_vec(phi);
            let rhs: Vec<Scalar> = phi.iter().map(|x| x * &Scalar::i()).collect();
            if lhs != rhs {
                return Err(Error::BadCoframe(format!("form {} is not of type (1,0)", a + 1)));
            }
        }
        if theta_matrix(&forms).rank() != dim {
            return Err(Error::BadCoframe("forms and their conjugates do not span the dual".into()));
        }
        return Ok(ComplexCoframe { forms, provenance: Provenance::UserSupplied });
    }
    let ia = triple.dual_action(Structure::I);
    let ja = triple.dual_action(Structure::J);
    let mut forms: Vec<Vec<Scalar>> = Vec::new();
    for a in 0..dim {
        if forms.len() == half {
            break;
        }
        let mut eps = vec![Scalar::zero(); dim];
        eps[a] = Scalar::one();
        let ieps = ia.mul_vec(&eps);
        let phi: Vec<Scalar> = eps.iter().zip(&ieps).map(|(x, y)| x + &(y * &Scalar::i())).collect();
        let conj: Vec<Scalar> = phi.iter().map(Scalar::conj).collect();
        let partner = ja.mul_vec(&conj);
        let mut trial = forms.clone();
        trial.push(phi);
        trial.push(partner);
        if Matrix::from_rows(trial.clone()).rank() == trial.len() {
            forms = trial;
        }
    }
    debug_assert_eq!(forms.len(), half);
    Ok(ComplexCoframe { forms, provenance: Provenance::AutoConstructed })
}

/// Columns `θ^a`: the coframe followed by its conjugates.
pub(crate) fn theta_matrix(forms: &[Vec<Scalar>]) -> Matrix {
    let dim = forms[0].len();
    let mut cols = forms.to_vec();
    cols.extend(forms.iter().map(|f| f.iter().map(Scalar::conj).collect()));
    Matrix::from_columns(dim, &cols)
}

/// Real 1-forms `α` with `α, Iα, Jα, Kα` all closed; this is the largest
/// `I,J,K`-stable subspace of closed 1-forms.
pub fn closed_quaternionic_coframe(g: &LieAlgebra, triple: &HypercomplexTriple) -> Subspace {
    let n = g.dim();
    let de = g.de();
    let ones = exterior_basis(n, 1);
    let twos = exterior_basis(n, 2);
    let d = matrix_of(&ones, &twos, |f| f.derivation(&de));
    let mut stacked = d.clone();
    for s in Structure::ALL {
        stacked = stacked.vstack(&d.mul(&triple.dual_action(s)));
    }
    stacked.kernel(FieldTag::Complex)
}

/// Convenience: `Σ c_a e^a` as a form on the real generators.
pub fn covector_form(v: &[Scalar]) -> Form {
    Form::from_terms(v.iter().enumerate().map(|(a, c)| (vec![a], c.clone())))
}
