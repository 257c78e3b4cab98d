//! Exact Hermitian matrices over ℤ, ℤ[i] and ℤ[ω] as charged weighted graphs:
//! characteristic and reciprocal polynomials, exact cyclotomicity, Mahler
//! measures, canonical forms under the equivalence group, a catalog of named
//! cyclotomic graphs and the growing search for minimal non-cyclotomic graphs.

pub mod catalog;
pub mod equiv;
pub mod grow;
pub mod graphmat;
pub mod poly;
pub mod ring;

pub use graphmat::{GraphError, HermitianMatrix, VertexAddition, MAX_VERTICES};
pub use ring::{Ring, RingElement, RingError};
pub use poly::{char_poly, is_cyclotomic_matrix, mahler_measure, mahler_of_matrix, IntPolynomial, MahlerResult, TAU0};
