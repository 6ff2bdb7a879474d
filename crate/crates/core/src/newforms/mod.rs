//! Classical newform eigen-systems: ingestion, serialization and internal
//! consistency checks.

pub mod eigensystem;

pub use eigensystem::{hecke_consistency, load_eigensystem, ramanujan_check, EigenSystem, EigenSystemReport};
