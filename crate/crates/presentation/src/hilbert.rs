use crate::error::{PresentationError, Result};
use rm_core::RMData;
use serde::Serialize;

/// Dimensions of the graded pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub coefficients: Vec<u128>,
}

/// Taylor coefficients of `(1 + (c-a-d) t + t^2) / (1 - (a+d) t + t^2)` up to degree `n`.
pub fn hilbert_coeffs(rm: &RMData, n: usize) -> Result<HilbertData> {
    hilbert_from_invariants(rm.c() as u128, rm.trace() as u128, n)
}

/// Same series from `c` and `t = a + d`.
pub fn hilbert_from_invariants(c: u128, t: u128, n: usize) -> Result<HilbertData> {
    let mut h: Vec<u128> = vec![1, c, c * t];
    while h.len() <= n {
        let k = h.len();
        let next = t
            .checked_mul(h[k - 1])
            .and_then(|x| x.checked_sub(h[k - 2]))
            .ok_or(PresentationError::Overflow("Hilbert coefficient exceeds u128"))?;
        h.push(next);
    }
    h.truncate(n + 1);
    Ok(HilbertData { coefficients: h })
}
