//! Quadratic presentations of `B_g(theta, tau)`: generators `x_1, ..., x_c` and
//! `c (c - a - d)` relations read off from kernels of the blocks `M(mu)`, in raw,
//! rational, modular and monic normalizations, plus Hilbert series data.

pub mod error;
pub mod forms;
pub mod hilbert;
pub mod json;
pub mod minors;
pub mod present;

pub use error::{PresentationError, Result};
pub use forms::ModularCoefficients;
pub use hilbert::{hilbert_coeffs, hilbert_from_invariants, HilbertData};
pub use json::presentation_json;
pub use minors::{
    column_minor, det_lu, det_permutation, gram_determinant, kernel_basis, kernel_basis_with_pivots, kernel_from_block,
    minor_f, minor_f_permutation, orthonormal_span, relative_residual, select_pivots, subspace_distance, KernelBasis,
};
pub use present::{
    echelon_from_right, monic_ordered, normalize_modular, normalize_rational, normalizer, relations, Normalization,
    Presentation, Relation, RelationTerm, ECHELON_TOL, ZERO_THRESHOLD,
};
