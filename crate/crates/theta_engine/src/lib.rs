//! Theta functions with rational characteristics
//!
//! `theta_{r,s}(z, tau) = sum_n exp[pi i (n+r)^2 tau + 2 pi i (n+r)(z+s)]`,
//! the theta constants `theta_r(tau) = theta_{r,0}(0, tau)`, and an engine that
//! evaluates theta constants at `M tau` for integer matrices `M` by exact
//! bookkeeping of the characteristic under `SL2(Z)`.
//!
//! Set `RM_TORUS_PRECISION=<bits>` and use [`SeriesControl::from_env`] to sum
//! the series in multi-precision arithmetic.

pub mod error;
pub mod forms;
pub mod functions;
pub mod hp;
pub mod identities;
pub mod modular;
pub mod series;
pub mod types;

pub use error::{Result, ThetaError};
pub use forms::{FormHandle, FormValues, PointCache, ThetaFactor, ThetaProduct, ThetaProducts};
pub use functions::{
    algebraic_theta, automorphy_factor, constant_fourier_term, kappa, shifted_form, theta, theta_constant,
    theta_zero, theta_zero_check, ConstantTerm, ZeroCheck,
};
pub use identities::{automorphy_residual, functional_equation_check, gamma_1_2_word, jacobi_residual, FunctionalCheck};
pub use modular::{phase_factor, theta_at, IntMatrix2, Mat2, PreparedPoint};
pub use types::{frac_floor, q_to_f64, RationalChar, SeriesControl, UpperHalfPoint, IM_GUARD, PRECISION_ENV, Q};
