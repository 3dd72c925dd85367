//! Library side of the `hilbcheck` binary: input parsing, reports, the
//! verification suite and the JSON schema.

pub mod cases;
pub mod input;
pub mod report;
pub mod schema;
