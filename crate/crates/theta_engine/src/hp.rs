//! Multi-precision variant of the direct theta series.

use crate::error::{Result, ThetaError};
use crate::series::{tail_bound, window_center, ROUNDING_FLOOR};
use crate::types::{q_to_f64, SeriesControl, Q};
use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_complex::Complex64;
use std::f64::consts::PI;

const RM: RoundingMode = RoundingMode::ToEven;

fn consts() -> Result<Consts> {
    Consts::new().map_err(|e| ThetaError::InvalidArgument(format!("constant cache: {:?}", e)))
}

fn bf_q(q: &Q, p: usize) -> BigFloat {
    BigFloat::from_i64(*q.numer(), p).div(&BigFloat::from_i64(*q.denom(), p), p, RM)
}

/// Round a multi-precision value to the nearest double.
pub fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    match x.as_raw_parts() {
        Some((words, _, sign, e, _)) => {
            let mut acc = 0.0f64;
            let mut scale = 1.0f64;
            for w in words.iter().rev().take(2) {
                scale /= 18446744073709551616.0;
                acc += (*w as f64) * scale;
            }
            let v = acc * 2f64.powi(e);
            if sign == Sign::Neg {
                -v
            } else {
                v
            }
        }
        None if x.is_inf_pos() => f64::INFINITY,
        None if x.is_inf_neg() => f64::NEG_INFINITY,
        None => f64::NAN,
    }
}

/// Same contract as [`crate::series::theta_series`], accumulated with `bits` of mantissa.
///
/// Characteristics enter exactly; `z` and `tau` are taken at their binary values.
pub fn theta_series_hp(
    rq: &Q,
    sq: &Q,
    z: Complex64,
    tau: Complex64,
    ctl: &SeriesControl,
    bits: usize,
) -> Result<Complex64> {
    let p = bits.max(64);
    let mut cc = consts()?;
    let r = q_to_f64(rq);
    let center = window_center(r, z, tau)?;
    let y = tau.im;
    let log_mag = |x: f64| -PI * y * x * x - 2.0 * PI * x * z.im;

    let pi = cc.pi(p, RM);
    let two_pi = pi.mul(&BigFloat::from_i64(2, p), p, RM);
    let br = bf_q(rq, p);
    let bs = bf_q(sq, p);
    let tre = BigFloat::from_f64(tau.re, p);
    let tim = BigFloat::from_f64(tau.im, p);
    let zre_s = BigFloat::from_f64(z.re, p).add(&bs, p, RM);
    let zim = BigFloat::from_f64(z.im, p);

    let term = |n: i64, cc: &mut Consts| -> (BigFloat, BigFloat) {
        let x = BigFloat::from_i64(n, p).add(&br, p, RM);
        let x2 = x.mul(&x, p, RM);
        let lm = pi
            .mul(&tim, p, RM)
            .mul(&x2, p, RM)
            .add(&two_pi.mul(&x, p, RM).mul(&zim, p, RM), p, RM)
            .neg();
        let ph = pi
            .mul(&x2, p, RM)
            .mul(&tre, p, RM)
            .add(&two_pi.mul(&x, p, RM).mul(&zre_s, p, RM), p, RM);
        let ph = ph.rem(&two_pi);
        let m = lm.exp(p, RM, cc);
        (m.mul(&ph.cos(p, RM, cc), p, RM), m.mul(&ph.sin(p, RM, cc), p, RM))
    };

    let c = center as i64;
    let (mut sre, mut sim) = term(c, &mut cc);
    let mut max_mag = log_mag(center + r).exp();
    let tol = ctl.tolerance.min(2f64.powi(-(p as i32)));
    let floor = ROUNDING_FLOOR.min(2f64.powi(-(p as i32)));
    let mut k = 0i64;
    loop {
        k += 1;
        if 2 * k as usize + 1 > ctl.max_terms {
            return Err(ThetaError::NonConvergence(ctl.max_terms));
        }
        for n in [c + k, c - k] {
            let (a, b) = term(n, &mut cc);
            sre = sre.add(&a, p, RM);
            sim = sim.add(&b, p, RM);
            max_mag = max_mag.max(log_mag(n as f64 + r).exp());
        }
        let kf = k as f64;
        let bound = tail_bound(&log_mag, center + kf + 1.0 + r, 1.0)
            + tail_bound(&log_mag, center - kf - 1.0 + r, -1.0);
        let sum = Complex64::new(bf_to_f64(&sre), bf_to_f64(&sim));
        if bound <= tol * sum.norm() || bound <= floor * max_mag {
            return Ok(sum);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_round_trips() {
        for v in [1.0, -3.25, 1e-300, 7.123456789e12, -0.1] {
            assert_eq!(bf_to_f64(&BigFloat::from_f64(v, 128)), v);
        }
    }

    #[test]
    fn agrees_with_double_series() {
        let ctl = SeriesControl::default();
        let tau = Complex64::new(0.25, 0.7);
        let z = Complex64::new(0.1, -0.2);
        let (r, s) = (Q::new(1, 24), Q::new(1, 3));
        let a = crate::series::theta_series(&r, &s, z, tau, &ctl).unwrap();
        let b = theta_series_hp(&r, &s, z, tau, &ctl, 192).unwrap();
        assert!((a - b).norm() < 1e-14 * b.norm());
    }
}
