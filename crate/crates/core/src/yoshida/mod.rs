//! Yoshida lifts at the level of degree-4 spin polynomials: conditions,
//! Hecke fields, and the twists of the lift.

pub mod conditions;
pub mod io;
pub mod lift;

pub use conditions::{
    check_conditions, check_conditions_asserting, ConditionReport, DiscreteSeries, DiscreteSeriesStatus,
    WeightCondition,
};
pub use io::{lift_from_json, lift_to_json};
pub use lift::{
    build_lift, build_lift_with, common_twists, compare_fields, constant_term_check, containment_check,
    factorization_check, full_hecke_field, lift_twist_group, ordered_compositum, restrict_automorphism,
    spin_twist_holds, swap_symmetric, trace_field, verify_lifted_twist, ContainmentReport, FieldComparison,
    LiftOptions, LiftTwistGroup, ReferenceComparison, SpinPolynomial, YoshidaLift,
};
