//! Exact scalars and dense linear algebra.

mod field;
mod matrix;
mod ratfunc;
mod univariate;
mod valuation;

pub use field::{Field, FieldElement};
pub use matrix::{DenseMatrix, Echelon};
pub use ratfunc::{QPoly, RatFunc};
pub use univariate::{characteristic_polynomial, UniPoly};
pub use valuation::{sampled_minor_gcd, t_adic_minor_valuation, MinorValuation, SampledMinorGcd};
