//! Output-length calculators and the derived security predicates.

mod length;
mod predicate;

pub use length::{
    delta_for, ell_ideal, ell_robust, ideal_bound_real, min_qubits, robust_bound_real, OtParams,
    Regime, SecurityReport,
};
pub use predicate::{
    abort_interval, honest_abort_bound, ident_security, qber_threshold, secure_predicate,
    IdentSecurity,
};
