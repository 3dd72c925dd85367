//! Gröbner bases and the ideal operations built on them.

mod basis;
mod engine;
mod ops;
mod points;

pub use basis::{buchberger, groebner, ideal_equal, GroebnerBasis, QuotientBasis};
pub use ops::{
    initial_ideal, intersect, linear_syzygies, maximal_ideal_power, schreyer_syzygies, SyzygyBasis,
};
pub use points::{delta_ratio, points_ideal, points_ideal_with_order};

pub(crate) use points::linear_basis_engine;
