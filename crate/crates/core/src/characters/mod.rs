//! `(Z/NZ)^×`, Dirichlet characters and the genus/level hypothesis checker.

pub mod character;
pub mod hypotheses;
pub mod unit_group;

pub use character::{all_characters, unit_group, DirichletCharacter};
pub use hypotheses::{find_sigma, twist_hypotheses, HypothesisReport};
pub use unit_group::UnitGroup;
