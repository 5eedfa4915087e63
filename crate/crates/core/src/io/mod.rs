//! Text formats: gem files for colored graphs, pst files for complexes and
//! DOT export.

pub mod dot;
pub mod gem;
pub mod pst;

pub use dot::export_dot;
pub use gem::{parse_gem, write_gem, ParseError};
pub use pst::{parse_pst, write_pst};
