use crate::error::{Result, ThetaError};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

pub type Q = Ratio<i64>;

/// Smallest imaginary part accepted for direct series summation.
pub const IM_GUARD: f64 = 1e-8;

/// Name of the environment variable selecting the high-precision mantissa (in bits).
pub const PRECISION_ENV: &str = "RM_TORUS_PRECISION";

pub fn q_to_f64(q: &Q) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Representative of `q` mod 1 in `[0, 1)` together with the integer part removed.
pub fn frac_floor(q: &Q) -> (Q, i64) {
    let n = q.numer().div_floor(q.denom());
    (q - Q::from_integer(n), n)
}

/// A rational characteristic `(r, s)`.
///
/// The raw pair is kept because the series depends on it: shifting `s` by an
/// integer `n` multiplies the function by `exp(2 pi i r n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalChar {
    pub r: Q,
    pub s: Q,
}

impl RationalChar {
    pub fn new(r: Q, s: Q) -> Self {
        RationalChar { r, s }
    }

    pub fn from_ints(rn: i64, rd: i64, sn: i64, sd: i64) -> Self {
        RationalChar::new(Q::new(rn, rd), Q::new(sn, sd))
    }

    pub fn zero() -> Self {
        RationalChar::new(Q::zero(), Q::zero())
    }

    /// Canonical representative with `0 <= r, s < 1` and the phase `phi` (mod 2)
    /// such that `theta_{r,s} = exp(pi i phi) * theta_{canonical}`.
    pub fn canonical(&self) -> (RationalChar, Q) {
        let (r0, _) = frac_floor(&self.r);
        let (s0, n) = frac_floor(&self.s);
        let phase = frac_mod2(&(r0 * Q::from_integer(2 * n)));
        (RationalChar::new(r0, s0), phase)
    }

    /// True when the two characteristics differ by integers in each slot.
    pub fn equivalent(&self, other: &RationalChar) -> bool {
        self.canonical().0 == other.canonical().0
    }

    pub fn r_f64(&self) -> f64 {
        q_to_f64(&self.r)
    }

    pub fn s_f64(&self) -> f64 {
        q_to_f64(&self.s)
    }
}

fn frac_mod2(q: &Q) -> Q {
    let two = Q::from_integer(2);
    let k = (q / two).numer().div_floor((q / two).denom());
    q - two * Q::from_integer(k)
}

/// A point of the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    value: Complex64,
}

impl UpperHalfPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.im > 0.0) || !value.re.is_finite() || !value.im.is_finite() {
            return Err(ThetaError::DomainError(format!(
                "tau = {} is not in the upper half plane",
                value
            )));
        }
        Ok(UpperHalfPoint { value })
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        UpperHalfPoint::new(Complex64::new(re, im))
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    /// Whether direct series summation is allowed at this point.
    pub fn above_guard(&self) -> bool {
        self.value.im >= IM_GUARD
    }
}

/// Truncation control for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub tolerance: f64,
    pub max_terms: usize,
    /// Mantissa bits for the high-precision path; `None` means complex double.
    pub precision_bits: Option<usize>,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            tolerance: 1e-15,
            max_terms: 1_000_000,
            precision_bits: None,
        }
    }
}

impl SeriesControl {
    pub fn new(tolerance: f64, max_terms: usize) -> Result<Self> {
        let c = SeriesControl {
            tolerance,
            max_terms,
            precision_bits: None,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_precision(mut self, bits: Option<usize>) -> Self {
        self.precision_bits = bits.filter(|&b| b > 53);
        self
    }

    /// Default control, with the high-precision mantissa read from the environment.
    pub fn from_env() -> Self {
        let bits = std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok());
        SeriesControl::default().with_precision(bits)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(ThetaError::InvalidArgument(format!(
                "tolerance {} must lie in (0, 1)",
                self.tolerance
            )));
        }
        if self.max_terms < 3 {
            return Err(ThetaError::InvalidArgument(format!(
                "max_terms {} must be at least 3",
                self.max_terms
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_phase() {
        let ch = RationalChar::from_ints(7, 3, 5, 2);
        let (c, ph) = ch.canonical();
        assert_eq!(c, RationalChar::from_ints(1, 3, 1, 2));
        // s = 5/2 = 1/2 + 2, r0 = 1/3: phase 2 * (1/3) * 2 = 4/3
        assert_eq!(ph, Q::new(4, 3));
        assert!(ch.equivalent(&RationalChar::from_ints(-2, 3, -3, 2)));
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(UpperHalfPoint::from_parts(0.0, 0.0).is_err());
        assert!(UpperHalfPoint::from_parts(1.0, -1.0).is_err());
        assert!(UpperHalfPoint::from_parts(0.0, 1e-9).unwrap().above_guard() == false);
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(1.0, 10).is_err());
        assert!(SeriesControl::new(1e-10, 2).is_err());
        assert!(SeriesControl::new(1e-10, 3).is_ok());
    }
}
