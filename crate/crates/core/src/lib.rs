//! Exact computations around inner twists of modular forms: number fields,
//! Dirichlet characters, symplectic similitudes, Siegel Fourier expansions,
//! eigen-systems, twist detection and Yoshida lifts.

pub mod algebra;
pub mod arith;
pub mod characters;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod newforms;
pub mod siegel_fourier;
pub mod symplectic;
pub mod twists;
pub mod yoshida;

pub use error::{Error, Result};
