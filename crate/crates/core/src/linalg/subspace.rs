use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Whether a subspace lives in `ℂ^N` or in the realified `ℝ^{2N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Complex,
    Real,
}

/// A linear subspace stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    tag: FieldTag,
}

/// Result of `num / den`: the dimension and a basis of coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub dim: usize,
    pub representatives: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize, tag: FieldTag) -> Self {
        Subspace { ambient, basis: Vec::new(), tag }
    }

    pub fn full(ambient: usize, tag: FieldTag) -> Self {
        Matrix::identity(ambient).image(tag)
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>, tag: FieldTag) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient, tag);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length != ambient dimension");
        debug_assert!(tag == FieldTag::Complex || vectors.iter().flatten().all(Scalar::is_real));
        let rref = Matrix::from_rows(vectors).rref();
        let basis = (0..rref.pivots.len()).map(|i| rref.reduced.row(i).to_vec()).collect();
        Subspace { ambient, basis, tag }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.check_compatible(other);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, rows, self.tag)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.check_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient, self.tag);
        }
        // Σ xᵢaᵢ − Σ yⱼbⱼ = 0; the intersection is spanned by the Σ xᵢaᵢ.
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(self.ambient, &cols);
        let k = self.dim();
        let vecs = m
            .kernel(FieldTag::Complex)
            .basis()
            .iter()
            .map(|x| combine(&self.basis, &x[..k], self.ambient))
            .collect();
        Subspace::span(self.ambient, vecs, self.tag)
    }

    /// `ℂ^N ⊇ S ↦ S_ℝ ⊆ ℝ^{2N}` in `[re; im]` coordinates.
    pub fn realify(&self) -> Result<Subspace> {
        if self.tag == FieldTag::Real {
            return Err(Error::AlreadyReal);
        }
        let vecs = self
            .basis
            .iter()
            .flat_map(|v| {
                let re: Vec<Scalar> = v.iter().map(|x| Scalar::real(x.re.clone())).collect();
                let im: Vec<Scalar> = v.iter().map(|x| Scalar::real(x.im.clone())).collect();
                let neg_im: Vec<Scalar> = im.iter().map(|x| -x).collect();
                [[re.clone(), im].concat(), [neg_im, re].concat()]
            })
            .collect();
        Ok(Subspace::span(2 * self.ambient, vecs, FieldTag::Real))
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let vecs = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), vecs, self.tag)
    }

    /// Dimension of `self / den` with coset representatives obtained by
    /// greedily extending a basis of `den` through the basis of `self`.
    pub fn quotient(&self, den: &Subspace) -> Result<Quotient> {
        self.check_compatible(den);
        if !self.contains_subspace(den) {
            return Err(Error::DenNotContained);
        }
        let mut acc = den.basis.clone();
        let mut reps = Vec::new();
        let mut rank = den.dim();
        for v in &self.basis {
            if rank == self.dim() {
                break;
            }
            acc.push(v.clone());
            let r = Matrix::from_rows(acc.clone()).rank();
            if r > rank {
                rank = r;
                reps.push(v.clone());
            } else {
                acc.pop();
            }
        }
        Ok(Quotient { dim: reps.len(), representatives: reps })
    }

    fn check_compatible(&self, other: &Subspace) {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        assert_eq!(self.tag, other.tag, "mixing complex and realified subspaces");
    }
}

pub fn quotient_dim(num: &Subspace, den: &Subspace) -> Result<Quotient> {
    num.quotient(den)
}

fn combine(vectors: &[Vec<Scalar>], coeffs: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += &(x * c);
        }
    }
    out
}

/// Splits a realified vector `[re; im]` back into complex coordinates.
pub fn complexify(v: &[Scalar]) -> Vec<Scalar> {
    let n = v.len() / 2;
    (0..n).map(|i| Scalar::new(v[i].re.clone(), v[n + i].re.clone())).collect()
}

/// Realified coordinates `[re; im]` of a complex vector.
pub fn realify_vector(v: &[Scalar]) -> Vec<Scalar> {
    v.iter()
        .map(|x| Scalar::real(x.re.clone()))
        .chain(v.iter().map(|x| Scalar::real(x.im.clone())))
        .collect()
}
