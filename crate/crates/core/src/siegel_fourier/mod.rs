//! Truncated Siegel Fourier expansions, their evaluation on `H_g`, the
//! Φ operator and the truncated cusp test.

pub mod expansion;
pub mod index;

pub use expansion::{
    exp_term, is_cusp_truncated, limit_point, phi_limit_gap_direct, phi_limit_residual, phi_operator,
    trace_pairing, SiegelFourierExpansion,
};
pub use index::{psd_indices, HalfIntegralMatrix};
