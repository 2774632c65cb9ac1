//! Exact linear algebra over the Gaussian rationals.

pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use matrix::{rank_kernel_image, Matrix, RankKernelImage, Rref};
pub use scalar::{fmt_rational, int, parse_rational, rat, Rational, Scalar};
pub use subspace::{complexify, quotient_dim, realify_vector, FieldTag, Quotient, Subspace};
