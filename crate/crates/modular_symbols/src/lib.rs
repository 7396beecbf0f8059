//! Congruence subgroups, continued fractions of quadratic surds, limiting modular
//! symbols and the averaged presentations obtained by integrating the coefficient
//! forms along them.

pub mod average;
pub mod cf;
pub mod error;
pub mod group;
pub mod integrate;
pub mod quad;
pub mod symbol;

pub use average::{averaged_json, averaged_relations, averaged_with, AveragedPresentation, AveragedRelation};
pub use cf::{cf_expand, cf_value, convergent_matrix, convergents, lyapunov, lyapunov_empirical, CFExpansion, Convergent};
pub use error::{Result, SymbolError};
pub use group::{member, member_big, BigMatrix2, Cusp, GroupSpec};
pub use integrate::{cusp_decay, integrate_geodesic, is_cusp_numeric, CuspDecay, GeodesicIntegral};
pub use quad::{integrate_unit, QuadratureControl, QuadratureResult};
pub use symbol::{hyperbolic_log, hyperbolic_symbol, limiting_symbol, Segment, SymbolChain, WeightMode, WeightVectors};
