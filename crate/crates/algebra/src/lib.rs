//! Exact polynomial algebra over finite fields: GF(p^k) arithmetic, sparse
//! multivariate polynomials, Gröbner bases, Jacobian minors and brute-force
//! rational point counts.

pub mod count;
pub mod error;
pub mod field;
pub mod groebner;
pub mod jacobian;
pub mod parse;
pub mod poly;

pub use count::{affine_point_count, projective_point_count, DEFAULT_BUDGET};
pub use error::{AlgebraError, Result};
pub use field::{FieldElement, GaloisField};
pub use groebner::{groebner_basis, ideal_dimension, normal_form, s_polynomial, GroebnerBasis};
pub use parse::{parse_polynomial, parse_system};
pub use poly::{Monomial, PolyRing, Polynomial};
