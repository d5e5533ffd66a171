//! Exact linear algebra over the rationals.
//!
//! Dense matrices with sparse-aware elimination, kernels and particular
//! solutions with deterministic conventions, and characteristic polynomials
//! with their rational roots. No floating point is used anywhere.

mod charpoly;
mod matrix;
mod poly;

pub use charpoly::{char_poly, char_poly_rational_roots, factor_rational_roots, CharPolyFactorization};
pub use matrix::{normalize_leading, rank_of, span_basis, Echelon, Matrix};
pub use poly::Polynomial;

use crate::rational::Rational;

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    m.solve(b)
}
