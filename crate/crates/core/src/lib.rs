//! Spectrum, eigenfunctions, discrete orthogonal polynomials and semiclassics
//! of the volume operator for four angular momenta `j1..j4` coupled to zero.
//!
//! The recoupling basis is labelled by the diagonal `l` between the pairs
//! `(j1, j2)` and `(j3, j4)`. On that grid the operator is a zero-diagonal
//! tridiagonal matrix whose entries `alpha(l)` are products of triangle
//! areas. Angular momenta are kept as exact half-integers ([`HalfInt`]) and
//! all squared areas are exact rationals until the final square root.
//!
//! ```
//! use qvolume::{spectrum, QuadrupleJ};
//!
//! let j = QuadrupleJ::from_f64([0.5, 0.5, 0.5, 0.5]);
//! let (_, eig) = spectrum::solve(&j).unwrap();
//! assert!((eig.eigenvalues[1] - 3f64.sqrt() / 16.0).abs() < 1e-15);
//! ```

pub mod alpha;
mod ddouble;
pub mod error;
pub mod halfint;
pub mod heron;
pub mod polynomials;
pub mod quadruple;
pub mod regge;
pub mod semiclassics;
pub mod spectrum;

pub use alpha::{alpha, AlphaDomain, MatrixElements};
pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use heron::{heron_squared, AreaSquared};
pub use polynomials::Convention;
pub use quadruple::{canonical_form, dimension_from_minimum, validate, LGrid, QuadrupleJ};
pub use regge::{regge_conjugate, regge_frame, ReggeFrame};
pub use semiclassics::PhasePoint;
