//! Basic and reduced cohomology of a Lie conformal algebra.
//!
//! Cochains with trivial coefficients are graded by polynomial degree in the
//! slot variables. When all structure polynomials are homogeneous of degree
//! `s`, the differential maps degree `n` to degree `n + s`, so cohomology is
//! computed one finite-dimensional piece `(q, n)` at a time.

mod basis;
mod cochain;
mod complex;
mod homotopy;
pub mod named;
mod tables;

use thiserror::Error;

pub use basis::{
    alternant, blocks, cochain_basis, min_degree, patterns, shapes, slot_vars, vandermonde_symmetric_basis,
    GradedPiece, Shape,
};
pub use cochain::Cochain;
pub use complex::{Complex, TauVariant, PIVOT};
pub use homotopy::{check_homotopy, homotopy_basis, homotopy_module, HomotopyReport, HomotopyWitness};
pub use tables::{
    basic_cohomology, cohomology_tables, homogeneous_degree, is_coboundary, is_reduced_coboundary, reduced_cohomology,
    variable_sum, CohomologyTable, ComplexKind, DegreeRange, TrivialComplex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("structure polynomials are not homogeneous of a single degree, so the complex is not graded")]
    InhomogeneousStructure,
    #[error("cochain is not homogeneous")]
    Inhomogeneous,
    #[error("polynomial is not block skew-symmetric on its generator tuple")]
    NotACochain,
}

/// The shape with `k` copies of generator 0 followed by `q - k` copies of generator 1.
pub fn two_generator_shape(q: usize, k: usize) -> Shape {
    assert!(k <= q);
    let mut s = vec![0; k];
    s.resize(q, 1);
    s
}
