//! Integrals of modular forms along geodesics between cusps.

use crate::error::{Result, SymbolError};
use crate::group::{BigMatrix2, Cusp};
use crate::quad::{integrate_unit, QuadratureControl};
use crate::symbol::WeightVectors;
use num_complex::Complex64;
use std::f64::consts::PI;
use theta_engine::{FormHandle, IntMatrix2, SeriesControl};

/// Heights `T` at which decay is sampled, in units of `W / (2 pi)`.
pub const DECAY_HEIGHTS: [f64; 3] = [5.0, 10.0, 20.0];

/// Values below this fraction of the automorphy scale are indistinguishable from zero.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Real part of the sample points, in units of `W`.
const DECAY_OFFSET: f64 = 0.1234;

/// Decay of every component of `f` at one cusp.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspDecay {
    pub cusp: Cusp,
    /// `|f(h sigma)| / scale` at the heights of [`DECAY_HEIGHTS`], per component.
    pub ratios: Vec<[f64; 3]>,
    /// Fitted rate `c` per component (infinite once below the noise floor).
    pub rates: Vec<f64>,
    pub cusp_type: bool,
}

/// Samples `f` pulled back to `oo` from `cusp`.
pub fn cusp_decay(f: &dyn FormHandle, cusp: &Cusp, ctl: &SeriesControl) -> Result<CuspDecay> {
    let h = cusp.to_infinity_matrix()?;
    let w = f.width_bound().max(1) as f64;
    let unit = w / (2.0 * PI);
    let zero = f.structural_zero();
    let mut ratios = vec![[0.0; 3]; f.len()];
    for (t, &height) in DECAY_HEIGHTS.iter().enumerate() {
        let sigma = Complex64::new(DECAY_OFFSET * w, height * unit);
        let v = f.eval_at(&h, sigma, ctl)?;
        for (i, r) in ratios.iter_mut().enumerate() {
            r[t] = if v.scales[i] > 0.0 { v.values[i].norm() / v.scales[i] } else { 0.0 };
        }
    }
    let min_rate = 0.5 * 2.0 * PI / w;
    let span = (DECAY_HEIGHTS[2] - DECAY_HEIGHTS[0]) * unit;
    let mut rates = Vec::with_capacity(f.len());
    let mut cusp_type = true;
    for (i, r) in ratios.iter().enumerate() {
        if zero[i] || r[2] <= NOISE_FLOOR {
            rates.push(f64::INFINITY);
            continue;
        }
        let rate = (r[0] / r[2]).ln() / span;
        rates.push(rate);
        if !(r[0] > r[1] && r[1] > r[2] && rate >= min_rate) {
            cusp_type = false;
        }
    }
    Ok(CuspDecay {
        cusp: cusp.clone(),
        ratios,
        rates,
        cusp_type,
    })
}

/// Whether every component of `f` decays exponentially at each of the cusps.
pub fn is_cusp_numeric(f: &dyn FormHandle, cusps: &[Cusp], ctl: &SeriesControl) -> Result<bool> {
    for c in cusps {
        if !cusp_decay(f, c, ctl)?.cusp_type {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicIntegral {
    pub values: Vec<Complex64>,
    /// Absolute error estimate, largest over components.
    pub error: f64,
    pub evaluations: usize,
}

impl GeodesicIntegral {
    /// Error relative to the largest component.
    pub fn relative_error(&self) -> f64 {
        let size = self.values.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if size > 0.0 {
            self.error / size
        } else {
            self.error
        }
    }
}

/// Top of the geodesic between two distinct cusps; `x + i` when one of them is `oo`.
fn apex(from: &Cusp, to: &Cusp) -> Result<Complex64> {
    let convert = |c: &Cusp| {
        c.to_f64()
            .ok_or_else(|| SymbolError::Overflow(format!("cusp {} has no finite value", c)))
    };
    match (from.is_infinity(), to.is_infinity()) {
        (true, true) => Err(SymbolError::InvalidArgument("geodesic from oo to oo".into())),
        (true, false) => Ok(Complex64::new(convert(to)?, 1.0)),
        (false, true) => Ok(Complex64::new(convert(from)?, 1.0)),
        (false, false) => {
            let (x, y) = (convert(from)?, convert(to)?);
            Ok(Complex64::new(0.5 * (x + y), 0.5 * (y - x).abs()))
        }
    }
}

/// `int_{y_a}^oo f(h sigma) P(h sigma) i / (c sigma + d)^2 dy` along `sigma = x0 + i y`,
/// where `h` sends `oo` to `cusp`, `x0 = h^{-1}(other)` and `y_a = Im h^{-1}(top)`.
fn ray_integral(
    f: &dyn FormHandle,
    cusp: &Cusp,
    other: &Cusp,
    top: Complex64,
    weights: Option<&WeightVectors>,
    ctl: &SeriesControl,
    quad: &QuadratureControl,
) -> Result<GeodesicIntegral> {
    let h = cusp.to_infinity_matrix()?;
    let hinv = IntMatrix2::new(h.d, -h.b, -h.c, h.a);
    let x0 = BigMatrix2::from(&hinv)
        .act_cusp(other)?
        .to_f64()
        .ok_or_else(|| SymbolError::InvalidArgument(format!("{} and {} coincide", cusp, other)))?;
    let y0 = hinv.act(top).im;
    let len = (f.width_bound().max(1) as f64 / (2.0 * PI)).max(1.0);
    let zero = f.structural_zero();
    let integrand = |s: f64| -> Result<Vec<Complex64>> {
        let y = y0 + len * s / (1.0 - s);
        let sigma = Complex64::new(x0, y);
        let v = f.eval_at(&h, sigma, ctl)?;
        let j = sigma * h.c as f64 + h.d as f64;
        let mut factor = Complex64::new(0.0, 1.0) / (j * j) * (len / ((1.0 - s) * (1.0 - s)));
        if let Some(wv) = weights {
            factor *= wv.factor(h.act(sigma));
        }
        Ok(v
            .values
            .iter()
            .zip(&zero)
            .map(|(z, &zr)| if zr { Complex64::new(0.0, 0.0) } else { z * factor })
            .collect())
    };
    let r = integrate_unit(integrand, f.len(), quad)?;
    Ok(GeodesicIntegral {
        values: r.values,
        error: r.error,
        evaluations: r.evaluations,
    })
}

/// `int_from^to f(tau) P(tau) d tau` along the hyperbolic geodesic, for every component of `f`.
///
/// The path is split at its top and each half is pulled back to a vertical ray
/// ending at `oo`. `P` is one when `weights` is `None`.
pub fn integrate_geodesic(
    f: &dyn FormHandle,
    from: &Cusp,
    to: &Cusp,
    weights: Option<&WeightVectors>,
    ctl: &SeriesControl,
    quad: &QuadratureControl,
) -> Result<GeodesicIntegral> {
    let n = f.len();
    if from == to {
        return Ok(GeodesicIntegral {
            values: vec![Complex64::new(0.0, 0.0); n],
            error: 0.0,
            evaluations: 0,
        });
    }
    for c in [from, to] {
        if !cusp_decay(f, c, ctl)?.cusp_type {
            return Err(SymbolError::NotCuspType(c.to_string()));
        }
    }
    let top = apex(from, to)?;
    let (first, second) = rayon::join(
        || ray_integral(f, from, to, top, weights, ctl, quad),
        || ray_integral(f, to, from, top, weights, ctl, quad),
    );
    let (first, second) = (first?, second?);
    let zero = f.structural_zero();
    let values = first
        .values
        .iter()
        .zip(&second.values)
        .zip(&zero)
        .map(|((a, b), &zr)| if zr { Complex64::new(0.0, 0.0) } else { b - a })
        .collect();
    Ok(GeodesicIntegral {
        values,
        error: first.error + second.error,
        evaluations: first.evaluations + second.evaluations,
    })
}
