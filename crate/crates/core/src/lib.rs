//! Exact computations on zero-dimensional ideals of small colength.

pub mod apolarity;
pub mod artin;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod kernel;
pub mod poly;
pub mod smooth;
pub mod tangent;

pub use error::{Error, Result};
pub use kernel::{DenseMatrix, Field, FieldElement};
pub use poly::{Ideal, Monomial, MonomialOrder, Polynomial, Ring};
