//! Inputs shared by the benchmarks.

use hilbcheck_core::fixtures::{j_ideal, random_points};
use hilbcheck_core::{Field, FieldElement, Ideal};

pub const SEED: u64 = 20_240_601;

/// The `(1,4,3)` ideal J in `d` variables.
pub fn j(d: usize) -> Ideal {
    j_ideal(Field::Rational, d)
}

/// `n` seeded random rational points in `d` dimensions.
pub fn points(d: usize, n: usize) -> Vec<Vec<FieldElement>> {
    random_points(d, n, SEED)
}
