//! Numerical residuals of classical theta identities.

use crate::error::Result;
use crate::functions::{automorphy_factor, kappa, theta};
use crate::modular::IntMatrix2;
use crate::types::{RationalChar, SeriesControl, UpperHalfPoint};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Relative residual of `theta_{0,0}^4 = theta_{0,1/2}^4 + theta_{1/2,0}^4` at `tau`.
pub fn jacobi_residual(tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<f64> {
    let z = Complex64::new(0.0, 0.0);
    let t00 = theta(&RationalChar::from_ints(0, 1, 0, 1), z, tau, ctl)?;
    let t01 = theta(&RationalChar::from_ints(0, 1, 1, 2), z, tau, ctl)?;
    let t10 = theta(&RationalChar::from_ints(1, 2, 0, 1), z, tau, ctl)?;
    let lhs = t00.powi(4);
    Ok((lhs - t01.powi(4) - t10.powi(4)).norm() / lhs.norm())
}

/// Relative residual of `theta_{r,s}(z + m' + m tau) = e_{m,m'}(z) theta_{r,s}(z)`.
pub fn automorphy_residual(
    ch: &RationalChar,
    m: i64,
    m_prime: i64,
    z: Complex64,
    tau: &UpperHalfPoint,
    ctl: &SeriesControl,
) -> Result<f64> {
    let t = tau.value();
    let lhs = theta(ch, z + m_prime as f64 + t * m as f64, tau, ctl)?;
    let rhs = automorphy_factor(ch, m, m_prime, z, t) * theta(ch, z, tau, ctl)?;
    Ok((lhs - rhs).norm() / rhs.norm().max(lhs.norm()))
}

/// Result of one functional-equation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalCheck {
    pub kappa: Complex64,
    /// `|kappa^8 - 1|`.
    pub kappa8_error: f64,
    pub residual: f64,
}

/// `|theta(z/(c tau + d), gamma tau) - kappa (c tau + d)^{1/2} e^{pi i c z^2/(c tau + d)} theta(z, tau)| / |theta(z, tau)|`.
pub fn functional_equation_check(
    gamma: &IntMatrix2,
    z: Complex64,
    tau: &UpperHalfPoint,
    ctl: &SeriesControl,
) -> Result<FunctionalCheck> {
    let k = kappa(gamma, tau, ctl)?;
    let t = tau.value();
    let j = gamma.j(t);
    let image = UpperHalfPoint::new(gamma.act(t))?;
    let zero = RationalChar::zero();
    let lhs = theta(&zero, z / j, &image, ctl)?;
    let base = theta(&zero, z, tau, ctl)?;
    let ph = Complex64::i() * PI * gamma.c as f64 * z * z / j;
    let rhs = k * j.sqrt() * ph.exp() * base;
    Ok(FunctionalCheck {
        kappa: k,
        kappa8_error: (k.powi(8) - 1.0).norm(),
        residual: (lhs - rhs).norm() / base.norm(),
    })
}

/// `T^{2 k_1} S T^{2 k_2} S ... T^{2 k_n}`, an element of the theta group.
pub fn gamma_1_2_word(ks: &[i64]) -> Result<IntMatrix2> {
    let s = IntMatrix2::new(0, -1, 1, 0);
    let mut acc = IntMatrix2::identity();
    for (i, k) in ks.iter().enumerate() {
        if i > 0 {
            acc = acc.mul(&s)?;
        }
        acc = acc.mul(&IntMatrix2::new(1, 2 * k, 0, 1))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_in_theta_group() {
        for w in [&[1i64][..], &[0, 1], &[1, -1, 2], &[2, 1, 0, -1]] {
            assert!(gamma_1_2_word(w).unwrap().in_gamma_1_2());
        }
    }
}
