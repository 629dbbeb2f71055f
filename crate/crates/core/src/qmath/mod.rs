//! Small-dimension complex linear algebra: states, the depolarizing channel,
//! entropies and distance measures.

mod entropy;
mod matrix;
pub mod random;
mod state;

pub(crate) use entropy::h;
pub use entropy::{
    binary_entropy, binary_entropy_inv, c_distance, fidelity, operator_entropy, trace_distance,
    von_neumann_entropy, Branch, EIGEN_ZERO,
};
pub use matrix::{pauli, CMatrix, HermitianEigen, C64};
pub use state::{
    bb84_matrix, bb84_state, depolarize, DensityMatrix, DepolarizingChannel, QubitBasis, MAX_DIM,
    MIN_DIM,
};
