//! The connecting maps `δ⁰: ker g → ker h` and `δ¹: coker g → coker h`.
//!
//! `δ⁰` is the restriction of `ψ_d − 1` along the inclusion of the 0-line
//! and `δ¹` is the class of minus that inclusion. Both are computed from the
//! ring, never read off a table; the leading-term pattern and the case
//! closed forms are checked against them.

mod cases;
mod delta;
mod leading;

pub use cases::{case_analysis, case_of, resolve_u, CaseId, CaseReport, Certificate, UResolution};
pub use delta::{
    delta0_direct, delta0_formula, delta0_ker_coker, ker_h_coordinates, delta0_matrix, delta1_column, delta1_matrix,
    les_input, row_window, Connecting, ConnectingMatrix,
};
pub use leading::{leading_term, verify_leading_term, LeadingTerm};
