//! Numeric kernel: generic scalars, small dense matrices, matrix φ-functions,
//! condition-gated solves, directional derivatives and ray jets.

pub mod deriv;
pub mod expm;
pub mod jet;
pub mod mat;
pub mod scalar;
pub mod solve;

pub use deriv::{dir_derivative, fd_derivative, loglog_slope, ray_jet};
pub use expm::{expm, phi_func};
pub use jet::MatJet;
pub use mat::Mat;
pub use scalar::{Dual, JetS, Scalar};
pub use solve::{cond_1, solve, solve_checked, COND_MAX_DEFAULT};
