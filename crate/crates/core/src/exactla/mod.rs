//! Exact rational linear algebra and integer lattice algebra.

pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod vector;

pub use lattice::{complement_basis, saturate, smith_normal_form, LatticeBasis, LatticeSplit, Smith};
pub use matrix::{QMatrix, Solve};
pub use rational::Rational;
pub use vector::QVector;

/// Basis of the linear span of `vectors` (a maximal independent subset).
pub fn span_basis(vectors: &[QVector], dim: usize) -> Vec<QVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = QMatrix::from_rows(vectors.to_vec()).expect("equal lengths");
    debug_assert_eq!(m.ncols(), dim);
    m.independent_rows().into_iter().map(|i| vectors[i].clone()).collect()
}

/// Basis of the orthogonal complement of `span(vectors)` in `Q^dim`.
pub fn orthogonal_complement(vectors: &[QVector], dim: usize) -> Vec<QVector> {
    if vectors.is_empty() {
        return (0..dim).map(|i| QVector::unit(dim, i)).collect();
    }
    QMatrix::from_rows(vectors.to_vec())
        .expect("equal lengths")
        .kernel()
}

/// Component of `x` orthogonal to `span(basis)`; `basis` must be independent.
pub fn orthogonal_residual(x: &QVector, basis: &[QVector]) -> QVector {
    if basis.is_empty() {
        return x.clone();
    }
    let b = QMatrix::from_rows(basis.to_vec()).expect("equal lengths");
    let gram = b.mul(&b.transpose()).expect("square");
    let rhs = b.mul_vec(x).expect("dimension");
    let alpha = gram
        .rank_and_solve(&rhs)
        .expect("dimension")
        .solution
        .expect("Gram matrix of an independent set is invertible");
    let proj = b.vec_mul(&alpha).expect("dimension");
    x - &proj
}

/// Whether `x` lies in `span(basis)`.
pub fn in_span(x: &QVector, basis: &[QVector]) -> bool {
    orthogonal_residual(x, basis).is_zero()
}
