//! Finite-dimensional quotient algebras: multiplication operators, local
//! Hilbert functions, support splitting and the small-length census.

mod census;
mod hilbert;
mod model;
mod split;

pub use census::{
    alternative_grassmannian_dimension, census_report, component_dimensions, enumerate_local_hfs,
    order_ideals, CensusReport, CensusRow, ComponentDimensions, TableRow, SUMMARY_TABLE,
};
pub use hilbert::{
    embedding_reduction, is_primary_at_origin, local_hilbert_function, local_hilbert_function_of,
    HilbertFunction,
};
pub use model::{centroid, multiplication_operators, recenter, translate_ideal, LocalAlgebraModel};
pub use split::{split_rational_support, SupportPiece};
