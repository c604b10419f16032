//! Exact computer algebra for finite Lie conformal algebras.
//!
//! The crate is organized bottom-up: [`poly`] supplies exact polynomials and
//! linear algebra over the rationals, [`algebra`] the λ-bracket calculus, and
//! the remaining modules solve for derivations, central extensions, rank-one
//! modules and cochain-complex cohomology.

pub mod algebra;
pub mod central_ext;
pub mod cohomology;
pub mod derivations;
mod linsys;
pub mod modules;
pub mod poly;

pub use algebra::{ConformalAlgebra, Element, ModuleSpec};
pub use poly::{ExactMatrix, Polynomial, Rational, Variable};
