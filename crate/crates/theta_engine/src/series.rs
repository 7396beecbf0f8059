//! Direct summation of the theta series with rational characteristics.

use crate::error::{Result, ThetaError};
use crate::hp;
use crate::types::{q_to_f64, SeriesControl, Q, IM_GUARD};
use num_complex::Complex64;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// Largest log-magnitude accepted before the sum would overflow.
const LOG_OVERFLOW: f64 = 700.0;

/// Relative floor below which a tail cannot change the rounded sum.
pub(crate) const ROUNDING_FLOOR: f64 = 1e-18;

/// `sum_n exp[pi i (n+r)^2 tau + 2 pi i (n+r)(z+s)]` by direct summation.
///
/// The window is centred on the dominant index and grown symmetrically until
/// the geometric bound on both Gaussian tails is below `tol * |partial sum|`.
pub fn theta_series(rq: &Q, sq: &Q, z: Complex64, tau: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let (r, s) = (q_to_f64(rq), q_to_f64(sq));
    check_inputs(r, s, z, tau)?;
    if let Some(bits) = ctl.precision_bits {
        return hp::theta_series_hp(rq, sq, z, tau, ctl, bits);
    }
    let y = tau.im;
    let log_mag = |x: f64| -PI * y * x * x - TWO_PI * x * z.im;
    let center = window_center(r, z, tau)?;
    let term = |n: f64| -> (Complex64, f64) {
        let x = n + r;
        let lm = log_mag(x);
        let ph = (PI * x * x * tau.re + TWO_PI * x * (z.re + s)).rem_euclid(TWO_PI);
        let m = lm.exp();
        (Complex64::new(m * ph.cos(), m * ph.sin()), m)
    };
    let (mut sum, mut max_mag) = term(center);
    let mut k = 0usize;
    loop {
        k += 1;
        if 2 * k + 1 > ctl.max_terms {
            return Err(ThetaError::NonConvergence(ctl.max_terms));
        }
        let kf = k as f64;
        let (tp, mp) = term(center + kf);
        let (tm, mm) = term(center - kf);
        sum += tp + tm;
        max_mag = max_mag.max(mp).max(mm);
        let bound = tail_bound(&log_mag, center + kf + 1.0 + r, 1.0)
            + tail_bound(&log_mag, center - kf - 1.0 + r, -1.0);
        if bound <= ctl.tolerance * sum.norm() || bound <= ROUNDING_FLOOR * max_mag {
            return Ok(sum);
        }
    }
}

/// Index of the dominant term, with an overflow check on its magnitude.
pub(crate) fn window_center(r: f64, z: Complex64, tau: Complex64) -> Result<f64> {
    let y = tau.im;
    let center = (-r - z.im / y).round();
    if center.abs() > 1e15 {
        return Err(ThetaError::DomainError("imaginary part of z too large".into()));
    }
    let x = center + r;
    if -PI * y * x * x - TWO_PI * x * z.im > LOG_OVERFLOW {
        return Err(ThetaError::DomainError("theta value overflows double precision".into()));
    }
    Ok(center)
}

/// Bound on the sum of the terms from `x` outward in direction `dir`.
pub(crate) fn tail_bound(log_mag: &dyn Fn(f64) -> f64, x: f64, dir: f64) -> f64 {
    let t1 = log_mag(x);
    let t2 = log_mag(x + dir);
    if t2 < t1 {
        t1.exp() / (1.0 - (t2 - t1).exp())
    } else {
        f64::INFINITY
    }
}

pub(crate) fn check_inputs(r: f64, s: f64, z: Complex64, tau: Complex64) -> Result<()> {
    if !(r.is_finite() && s.is_finite() && z.re.is_finite() && z.im.is_finite() && tau.re.is_finite()) {
        return Err(ThetaError::InvalidArgument("non-finite input".into()));
    }
    if !(tau.im >= IM_GUARD) {
        return Err(ThetaError::DomainError(format!(
            "Im(tau) = {:e} is below the direct-summation guard {:e}",
            tau.im, IM_GUARD
        )));
    }
    Ok(())
}

/// Fixed-length brute-force partial sum over `|n| <= n_max`, with no stopping rule.
pub fn theta_brute(r: f64, s: f64, z: Complex64, tau: Complex64, n_max: i64) -> Complex64 {
    let i = Complex64::i();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -n_max..=n_max {
        let x = n as f64 + r;
        acc += (i * PI * x * x * tau + 2.0 * i * PI * x * (z + s)).exp();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_brute_force_at_i() {
        let ctl = SeriesControl::default();
        let tau = Complex64::new(0.0, 1.0);
        let v = theta_series(&Q::from_integer(0), &Q::from_integer(0), Complex64::new(0.0, 0.0), tau, &ctl).unwrap();
        let b = theta_brute(0.0, 0.0, Complex64::new(0.0, 0.0), tau, 60);
        assert!((v - b).norm() < 1e-15);
        assert!((v.re - 1.086434811213308).abs() < 1e-14);
    }

    #[test]
    fn tiny_constants_keep_relative_accuracy() {
        let ctl = SeriesControl::default();
        let tau = Complex64::new(0.0, 48.0);
        let v = theta_series(&Q::new(1, 2), &Q::from_integer(0), Complex64::new(0.0, 0.0), tau, &ctl).unwrap();
        let expect = 2.0 * (-PI * 48.0 * 0.25f64).exp();
        assert!((v.re - expect).abs() < 1e-13 * expect);
    }

    #[test]
    fn guard_is_enforced() {
        let ctl = SeriesControl::default();
        let e = theta_series(&Q::from_integer(0), &Q::from_integer(0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 1e-9), &ctl);
        assert!(matches!(e, Err(ThetaError::DomainError(_))));
    }

    #[test]
    fn term_cap_reports_nonconvergence() {
        let ctl = SeriesControl::new(1e-15, 5).unwrap();
        let e = theta_series(&Q::from_integer(0), &Q::from_integer(0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 1e-6), &ctl);
        assert!(matches!(e, Err(ThetaError::NonConvergence(5))));
    }
}
