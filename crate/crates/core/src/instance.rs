use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::hypercomplex::{BigradedComplex, HypercomplexTriple};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Scalar};

/// Where an instance came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Family(FamilySpec),
    Explicit,
}

/// A Lie algebra with a hypercomplex structure, a (1,0)-coframe and a
/// metric gram matrix in the algebra's basis.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub complex: BigradedComplex,
    pub gram: Matrix,
    pub source: Source,
}

impl Instance {
    pub fn new(
        label: impl Into<String>,
        algebra: LieAlgebra,
        triple: HypercomplexTriple,
        coframe: Option<Vec<Vec<Scalar>>>,
        gram: Option<Matrix>,
        source: Source,
    ) -> Result<Self> {
        let dim = algebra.dim();
        let gram = gram.unwrap_or_else(|| Matrix::identity(dim));
        if gram.rows() != dim || gram.cols() != dim {
            return Err(Error::DimensionMismatch(format!("gram is {}x{}, expected {dim}x{dim}", gram.rows(), gram.cols())));
        }
        let complex = BigradedComplex::new(algebra, triple, coframe)?;
        Ok(Instance { label: label.into(), complex, gram, source })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.complex.algebra
    }

    pub fn triple(&self) -> &HypercomplexTriple {
        &self.complex.triple
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }
}
