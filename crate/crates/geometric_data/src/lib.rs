//! Geometric data of a quadratic presentation: the relations as bilinear forms, the
//! matrix of linear forms they define, and the maximal minors cutting out the
//! characteristic variety in the first projective factor.

pub mod biform;
pub mod error;
pub mod omega;

pub use biform::{als_search, graph_member, graph_residual, multilinearize, BiformRelation, BiformTerm, GraphPoint};
pub use error::{GeomError, Result};
pub use omega::{
    binomial, minor_equations, minors_json, omega_from_biforms, omega_matrix, LinearEntry, LinearFormMatrix, MinorPoly,
    DEFAULT_CAP, PRUNE,
};
