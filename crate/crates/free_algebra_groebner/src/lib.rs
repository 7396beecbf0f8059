//! Noncommutative Groebner bases in `C<x_1, ..., x_c>` under deglex, truncated
//! at a fixed degree, and the linear bases of the quotient they determine.

pub mod convert;
pub mod error;
pub mod groebner;
pub mod macaulay;
pub mod poly;
pub mod word;

pub use convert::from_presentation;
pub use error::{GroebnerError, Result};
pub use groebner::{
    basis_json, complete_to_degree, linear_basis, normal_form, normal_form_traced, normal_form_with, overlaps_of_degree,
    s_element, GroebnerState, NormalForm, Overlap, ReductionStep, DEFAULT_DEGREE, ZERO_THRESHOLD,
};
pub use macaulay::{macaulay_matrix, reduced_component, words_desc};
pub use poly::FreePoly;
pub use word::{deglex_compare, Word};
