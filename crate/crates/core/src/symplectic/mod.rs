//! Symplectic similitudes, congruence subgroups, the Yoshida embedding and
//! the action of `Sp_2g(R)` on the Siegel upper half space.

pub mod gsp;
pub mod matrix;
pub mod siegel;

pub use gsp::{
    diamond_matrix, in_congruence_subgroup, is_symplectic, random_symplectic_word, similitude_factor,
    standard_j, yoshida_embed, CongruenceKind, SpGenerator,
};
pub use matrix::{Matrix, RMatrix, Scalar};
pub use siegel::{automorphy_factor, moebius_action, SiegelPoint};
