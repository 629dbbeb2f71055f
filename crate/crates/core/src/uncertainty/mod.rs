//! Uncertainty bound for a BB84 qubit whose holder measures it and keeps the
//! post-measurement state in depolarizing storage.

mod cost;
mod operator;
mod optimize;

pub use cost::{cost_b, cost_c, cost_c_scalar, OUTCOME_CUTOFF};
pub use operator::{
    completeness_defect, orbit_group, MeasurementOperator, OrbitMeasurement, ORBIT_COMPLETENESS_TOL,
};
pub use optimize::{r_hat, t_closed_form, t_numeric, GridSpec, NumericMinimum};
