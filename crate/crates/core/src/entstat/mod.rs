//! Entropic and statistical toolkit: guessing probability and min-entropy of
//! cq-states, non-uniformity, and the analytic bound calculators.

mod calc;
pub mod classical;
mod cq;
pub mod sdp;

pub use calc::{
    aep_lower_bound, aep_lower_bound_gamma, chernoff_tail, pa_bound, split_index,
    split_index_with_alpha, BoundParams, Split,
};
pub(crate) use cq::helstrom_weighted;
pub use cq::{
    guess_prob_cq, helstrom_guess_prob, min_entropy_cq, min_entropy_dual, non_uniformity, CqState,
    MAX_DUAL_DIM,
};
