//! Real-multiplication data of a hyperbolic `g` in `SL2(Z)` and the structure
//! constants of the ring `B_g(theta, tau)`.

pub mod error;
pub mod rmdata;
pub mod structure;
pub mod surd;

pub use error::{Result, RmError};
pub use rmdata::{canonical_g, validate, RMData};
pub use structure::{
    alpha, block_characteristics, block_from_point, block_m, block_m_unchecked, index_set, lambda_display,
    lambda_matrix, q_mu, relative_min_singular, rep, structure_char, structure_constant_series,
    structure_constant_theta, RANK_TOL,
};
pub use surd::QuadraticSurd;
pub use theta_engine::IntMatrix2;
