//! Groups of inner twists of eigen-systems: detection, the identities they
//! satisfy, CM detection, and a seeded generator of systems with a
//! prescribed twist group.

pub mod cm;
pub mod cocycle;
pub mod detect;
pub mod synthetic;

pub use cocycle::{admissible_cocycles, cocycles, conjugation_matches, Cocycle};
pub use cm::{is_cm, quadratic_characters, CmStatus, CmSummary, MIN_CM_EVIDENCE};
pub use detect::{
    candidate_moduli, cocycle_check, conductor_lcm, determinant_relation_check, detect_inner_twists, fixed_field,
    fixed_field_membership, group_axioms_check, is_twist, uniqueness_check, usable_primes, verify_uniqueness,
    Inconclusive, InconclusiveReason, InnerTwist, TwistGroup, UniquenessReport,
};
pub use synthetic::{character_in, generate_synthetic, generate_synthetic_with, normalize_twist_group, SyntheticSpec};
