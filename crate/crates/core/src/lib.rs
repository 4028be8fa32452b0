//! Relators of surface groups from dimer models on surfaces.

pub mod config;
pub mod fixtures;
pub mod quiver;
pub mod relator;
pub mod replab;
pub mod report;
pub mod scalar;
pub mod tiling;
pub mod words;

pub use scalar::{Coefficient, Real};
pub use words::{Alphabet, FreeGroupMap, Letter, NcPoly, Word, WordError};

/// Exact rational coefficients for the symbolic layer.
pub type Rational = num_rational::BigRational;
/// Noncommutative polynomials with exact rational coefficients.
pub type QPoly = NcPoly<Rational>;
/// Complex matrices in double precision.
pub type Matrix64 = replab::CMat<f64>;
/// Matrix assignments in double precision.
pub type Assignment64 = replab::Assignment<f64>;
