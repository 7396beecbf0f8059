//! Theta functions, theta constants and the transformation constant `kappa`.

use crate::error::{Result, ThetaError};
use crate::modular::IntMatrix2;
use crate::series::theta_series;
use crate::types::{q_to_f64, RationalChar, SeriesControl, UpperHalfPoint, Q};
use num_complex::Complex64;
use num_traits::Zero;
use std::f64::consts::PI;

/// `theta_{r,s}(z, tau)`.
pub fn theta(ch: &RationalChar, z: Complex64, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Complex64> {
    ctl.validate()?;
    theta_series(&ch.r, &ch.s, z, tau.value(), ctl)
}

/// `theta_r(tau) = theta_{r,0}(0, tau)`.
pub fn theta_constant(r: &Q, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Complex64> {
    theta(&RationalChar::new(*r, Q::zero()), Complex64::zero(), tau, ctl)
}

/// `exp(-pi i r s) theta_{r,s}(0, tau)`.
pub fn algebraic_theta(ch: &RationalChar, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Complex64> {
    let v = theta(ch, Complex64::zero(), tau, ctl)?;
    let ph = -PI * q_to_f64(&(ch.r * ch.s));
    Ok(v * Complex64::new(ph.cos(), ph.sin()))
}

/// Smallest `|theta(0, tau)|` accepted at a probe point for `kappa`.
pub const PROBE_FLOOR: f64 = 1e-8;

/// `theta(0, gamma tau) / ((c tau + d)^{1/2} theta(0, tau))`, principal square root.
pub fn kappa(gamma: &IntMatrix2, probe: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Complex64> {
    if !gamma.in_gamma_1_2() {
        return Err(ThetaError::InvalidArgument(format!("{} is not in Gamma_(1,2)", gamma)));
    }
    let zero = RationalChar::zero();
    let t0 = theta(&zero, Complex64::zero(), probe, ctl)?;
    if t0.norm() < PROBE_FLOOR {
        return Err(ThetaError::DegenerateProbe(t0.norm()));
    }
    let image = UpperHalfPoint::new(gamma.act(probe.value()))?;
    let t1 = theta(&zero, Complex64::zero(), &image, ctl)?;
    Ok(t1 / (gamma.j(probe.value()).sqrt() * t0))
}

/// Residual of theta at its predicted zero, translated by the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCheck {
    pub z0: Complex64,
    /// `|theta_{r,s}(z0, tau)|`.
    pub residual: f64,
    /// `|theta_{r,s}(z0 + 0.3, tau)|`, a nearby generic value.
    pub scale: f64,
}

impl ZeroCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.residual < tol * self.scale.max(1.0)
    }
}

/// Zero of `theta_{r,s}(., tau)` attached to the lattice point `(p, q)`.
pub fn theta_zero(ch: &RationalChar, p: i64, q: i64, tau: &UpperHalfPoint) -> Complex64 {
    let a = p as f64 + 0.5 - ch.r_f64();
    let b = q as f64 + 0.5 - ch.s_f64();
    tau.value() * a + b
}

pub fn theta_zero_check(ch: &RationalChar, p: i64, q: i64, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<ZeroCheck> {
    let z0 = theta_zero(ch, p, q, tau);
    let residual = theta(ch, z0, tau, ctl)?.norm();
    let scale = theta(ch, z0 + 0.3, tau, ctl)?.norm();
    Ok(ZeroCheck { z0, residual, scale })
}

/// Estimate of the constant Fourier coefficient of `theta_r(l tau')` at the cusp at infinity.
///
/// Doubling the height squares every correction term, so the value at the
/// larger height is returned and the difference serves as the error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantTerm {
    pub a0: Complex64,
    /// Difference between the two heights used.
    pub error_estimate: f64,
}

pub fn constant_fourier_term(r: &Q, l: u32, ctl: &SeriesControl) -> Result<ConstantTerm> {
    if l == 0 {
        return Err(ThetaError::InvalidArgument("l must be positive".into()));
    }
    let t1 = 50.0 * (l as f64).powi(2);
    let v1 = theta_constant(r, &UpperHalfPoint::from_parts(0.0, t1)?, ctl)?;
    let v2 = theta_constant(r, &UpperHalfPoint::from_parts(0.0, 2.0 * t1)?, ctl)?;
    Ok(ConstantTerm {
        a0: v2,
        error_estimate: (v1 - v2).norm(),
    })
}

/// `exp[-pi i m^2 tau + 2 pi i (r m' - m (z + s))]`, the factor picked up under `z -> z + m' + m tau`.
pub fn automorphy_factor(ch: &RationalChar, m: i64, m_prime: i64, z: Complex64, tau: Complex64) -> Complex64 {
    let i = Complex64::i();
    let mf = m as f64;
    let e = -i * PI * mf * mf * tau + 2.0 * i * PI * (ch.r_f64() * m_prime as f64 - mf * (z + ch.s_f64()));
    e.exp()
}

/// Right-hand side of `theta_{r,s}(z, tau) = exp[pi i r^2 tau + 2 pi i r (z + s)] theta(z + r tau + s, tau)`.
pub fn shifted_form(ch: &RationalChar, z: Complex64, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Complex64> {
    let i = Complex64::i();
    let (r, s) = (ch.r_f64(), ch.s_f64());
    let t = tau.value();
    let base = theta(&RationalChar::zero(), z + t * r + s, tau, ctl)?;
    Ok((i * PI * r * r * t + 2.0 * i * PI * r * (z + s)).exp() * base)
}
