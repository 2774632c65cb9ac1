//! Sparse exterior forms on a fixed set of generators, plus the matrix
//! wrapper used for every operator between form spaces.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// A form `Σ c_I g^I` with `I` a strictly increasing multi-index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Form {
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Form::monomial(Vec::new(), c)
    }

    pub fn generator(a: usize) -> Self {
        Form::monomial(vec![a], Scalar::one())
    }

    /// `c · g^{i₁} ∧ … ∧ g^{i_k}` for an arbitrary index list; sorts it and
    /// applies the permutation sign.
    pub fn monomial(indices: Vec<usize>, c: Scalar) -> Self {
        let mut f = Form::zero();
        if let Some((sorted, neg)) = sort_with_sign(indices) {
            f.add_term(sorted, if neg { -c } else { c });
        }
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>) -> Self {
        let mut f = Form::zero();
        for (i, c) in terms {
            f += &Form::monomial(i, c);
        }
        f
    }

    /// Builds a form from coordinates in the given ordered basis.
    pub fn from_vector(basis: &[Vec<usize>], v: &[Scalar]) -> Self {
        assert_eq!(basis.len(), v.len());
        let mut f = Form::zero();
        for (i, c) in basis.iter().zip(v) {
            f.add_term(i.clone(), c.clone());
        }
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &[usize]) -> Scalar {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous form (`None` for zero or mixed degree).
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Vec::len);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Coordinates in the given ordered basis. Panics if a term falls outside it.
    pub fn to_vector(&self, basis: &[Vec<usize>]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); basis.len()];
        for (idx, c) in &self.terms {
            let pos = basis.iter().position(|b| b == idx).unwrap_or_else(|| panic!("term {idx:?} not in basis"));
            v[pos] = c.clone();
        }
        v
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        Form { terms: self.terms.iter().map(|(i, x)| (i.clone(), x * c)).collect() }
    }

    pub fn neg(&self) -> Form {
        Form { terms: self.terms.iter().map(|(i, x)| (i.clone(), -x)).collect() }
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut f = self.clone();
        f += &other.neg();
        f
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut f = self.clone();
        f += other;
        f
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                if let Some((sorted, neg)) = sort_with_sign(idx) {
                    let c = a * b;
                    out.add_term(sorted, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> Form {
        Form { terms: self.terms.iter().filter(|(i, _)| keep(i)).map(|(i, c)| (i.clone(), c.clone())).collect() }
    }

    /// Algebra homomorphism determined by the images of the generators
    /// (each a 1-form), extended multiplicatively.
    pub fn substitute(&self, images: &[Form]) -> Form {
        let mut out = Form::zero();
        for (idx, c) in &self.terms {
            let mut acc = Form::constant(c.clone());
            for &a in idx {
                acc = acc.wedge(&images[a]);
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    /// Odd derivation determined by the images of the generators:
    /// `D(x₁∧…∧x_k) = Σ (−1)^{j} x₁∧…∧Dx_{j+1}∧…∧x_k`.
    pub fn derivation(&self, images: &[Form]) -> Form {
        let mut out = Form::zero();
        for (idx, c) in &self.terms {
            for (pos, &a) in idx.iter().enumerate() {
                if images[a].is_zero() {
                    continue;
                }
                let c = if pos % 2 == 1 { -c } else { c.clone() };
                let left = Form::monomial(idx[..pos].to_vec(), c);
                let right = Form::monomial(idx[pos + 1..].to_vec(), Scalar::one());
                out += &left.wedge(&images[a]).wedge(&right);
            }
        }
        out
    }

    /// Relabels generators through an index involution and conjugates the
    /// coefficients (complex conjugation in a basis closed under it).
    pub fn conjugate_with(&self, relabel: impl Fn(usize) -> usize) -> Form {
        let mut out = Form::zero();
        for (idx, c) in &self.terms {
            let mapped: Vec<usize> = idx.iter().map(|&a| relabel(a)).collect();
            out += &Form::monomial(mapped, c.conj());
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Form {
        let mut out = Form::zero();
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), f(c));
        }
        out
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl std::ops::AddAssign<&Form> for Form {
    fn add_assign(&mut self, rhs: &Form) {
        for (i, c) in &rhs.terms {
            self.add_term(i.clone(), c.clone());
        }
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = self.terms.iter().map(|(i, c)| {
            let idx: String = i.iter().map(|a| (a + 1).to_string()).join(",");
            format!("({c})[{idx}]")
        });
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sorts an index list, returning `None` on a repeated index and the parity
/// of the sorting permutation otherwise.
fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut neg = false;
    // insertion sort counts inversions; lists are short
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, neg))
}

/// Lexicographic basis of `Λ^k` on `n` generators.
/// Sum of terms with signs pulled out front, e.g. `e12 - 1/2 e34 + (1+i) e56`.
/// `name` spells a monomial from its sorted indices; the empty monomial is `1`.
pub fn render_form(f: &Form, name: impl Fn(&[usize]) -> String) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (idx, c)) in f.terms().enumerate() {
        let name = if idx.is_empty() { "1".to_string() } else { name(idx) };
        let neg = if c.re.is_zero() { c.im.is_negative() } else { c.re.is_negative() && c.im.is_zero() };
        let mag = if neg { -c } else { c.clone() };
        let coef = if mag == Scalar::one() {
            String::new()
        } else if mag.im.is_zero() || mag.re.is_zero() {
            format!("{mag} ")
        } else {
            format!("({mag}) ")
        };
        match (n, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&coef);
        out.push_str(&name);
    }
    out
}

/// [`render_form`] in the real basis: `e13 - 2 e24`.
pub fn render_real(f: &Form, dim: usize) -> String {
    let sep = if dim >= 10 { "." } else { "" };
    render_form(f, |idx| format!("e{}", idx.iter().map(|a| a + 1).join(sep)))
}

pub fn exterior_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

/// Matrix of a linear map on forms, column `j` being the image of `source[j]`.
pub fn matrix_of(source: &[Vec<usize>], target: &[Vec<usize>], f: impl Fn(&Form) -> Form) -> Matrix {
    let cols: Vec<Vec<Scalar>> = source
        .iter()
        .map(|idx| f(&Form::monomial(idx.clone(), Scalar::one())).to_vector(target))
        .collect();
    Matrix::from_columns(target.len(), &cols)
}

/// Degree data attached to an operator's source or target space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Degree(usize),
    Bidegree(usize, usize),
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::Degree(k) => write!(f, "{k}"),
            Grading::Bidegree(p, q) => write!(f, "({p},{q})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Linearity {
    /// A complex matrix acting on complex coordinates.
    ComplexLinear,
    /// A real matrix acting on realified `[re; im]` coordinates; used for
    /// anti-linear maps and for complex-linear maps promoted to compose with them.
    Realified,
}

/// A linear map between graded form spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub source: Grading,
    pub target: Grading,
    pub matrix: Matrix,
    pub linearity: Linearity,
}

impl OperatorMatrix {
    pub fn complex(source: Grading, target: Grading, matrix: Matrix) -> Self {
        OperatorMatrix { source, target, matrix, linearity: Linearity::ComplexLinear }
    }

    pub fn realified(source: Grading, target: Grading, matrix: Matrix) -> Self {
        debug_assert!(matrix.is_real());
        OperatorMatrix { source, target, matrix, linearity: Linearity::Realified }
    }

    /// Promotes a complex-linear operator to realified coordinates.
    pub fn to_realified(&self) -> OperatorMatrix {
        match self.linearity {
            Linearity::Realified => self.clone(),
            Linearity::ComplexLinear => OperatorMatrix::realified(self.source, self.target, self.matrix.realify()),
        }
    }

    /// `self ∘ inner`. Gradings must chain and linearity tags must match.
    pub fn compose(&self, inner: &OperatorMatrix) -> Result<OperatorMatrix> {
        if inner.target != self.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: inner target {} != outer source {}",
                inner.target, self.source
            )));
        }
        if inner.linearity != self.linearity {
            return Err(Error::DimensionMismatch("cannot compose operators with different linearity tags".into()));
        }
        Ok(OperatorMatrix {
            source: inner.source,
            target: self.target,
            matrix: self.matrix.mul(&inner.matrix),
            linearity: self.linearity,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}
