pub mod algebra;
pub mod arith;
pub mod characters;
pub mod error;

pub use error::{Error, Result};
