//! Modular forms given by theta constants, evaluable anywhere in the upper half plane.

use crate::error::{Result, ThetaError};
use crate::modular::{IntMatrix2, Mat2, PreparedPoint};
use crate::types::{RationalChar, SeriesControl};
use num_complex::Complex64;
use num_integer::Integer;

/// Component values of a vector of forms at one point.
///
/// `scales[i]` is the magnitude of the automorphy factor carried by component
/// `i`: rounding noise of the value is of order `1e-16 * scales[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormValues {
    pub values: Vec<Complex64>,
    pub scales: Vec<f64>,
}

/// A finite vector of modular forms of a common weight.
pub trait FormHandle: Send + Sync {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Twice the weight.
    fn weight2(&self) -> u32;

    /// Upper bound for the width of every cusp.
    fn width_bound(&self) -> u64;

    /// Values at `gamma * w` for `gamma` in `SL2(Z)`.
    fn eval_at(&self, gamma: &IntMatrix2, w: Complex64, ctl: &SeriesControl) -> Result<FormValues>;

    /// Components known to vanish identically.
    fn structural_zero(&self) -> Vec<bool> {
        vec![false; self.len()]
    }
}

/// `theta_{r,s}(0, m tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaFactor {
    pub ch: RationalChar,
    pub m: i64,
}

impl ThetaFactor {
    pub fn new(ch: RationalChar, m: i64) -> Self {
        ThetaFactor { ch, m }
    }

    pub fn width_bound(&self) -> u64 {
        let l = (*self.ch.r.denom()).lcm(self.ch.s.denom()).unsigned_abs();
        2 * l * l * self.m.unsigned_abs()
    }
}

/// Cache of prepared points `diag(m, 1) * gamma * w`, keyed by `m`.
pub struct PointCache<'a> {
    gamma: &'a IntMatrix2,
    w: Complex64,
    entries: Vec<(i64, PreparedPoint)>,
}

impl<'a> PointCache<'a> {
    pub fn new(gamma: &'a IntMatrix2, w: Complex64) -> Self {
        PointCache { gamma, w, entries: Vec::new() }
    }

    pub fn get(&mut self, m: i64) -> Result<&PreparedPoint> {
        if m <= 0 {
            return Err(ThetaError::InvalidArgument(format!("multiplier {} must be positive", m)));
        }
        if let Some(i) = self.entries.iter().position(|(k, _)| *k == m) {
            return Ok(&self.entries[i].1);
        }
        let g = Mat2::from(*self.gamma);
        let mm = Mat2::new(g.a * m as i128, g.b * m as i128, g.c, g.d);
        let p = PreparedPoint::from_wide(&mm, self.w)?;
        self.entries.push((m, p));
        Ok(&self.entries.last().expect("just pushed").1)
    }

    pub fn theta(&mut self, f: &ThetaFactor, ctl: &SeriesControl) -> Result<(Complex64, f64)> {
        let p = self.get(f.m)?;
        Ok((p.theta(&f.ch, ctl)?, p.scale()))
    }
}

/// `coeff * prod_i theta_{r_i,s_i}(0, m_i tau)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaProduct {
    pub coeff: Complex64,
    pub factors: Vec<ThetaFactor>,
}

impl ThetaProduct {
    pub fn new(factors: Vec<ThetaFactor>) -> Self {
        ThetaProduct {
            coeff: Complex64::new(1.0, 0.0),
            factors,
        }
    }

    pub fn width_bound(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, f| acc.lcm(&f.width_bound()))
    }

    /// Value and automorphy scale at `gamma * w`.
    pub fn eval_cached(&self, cache: &mut PointCache<'_>, ctl: &SeriesControl) -> Result<(Complex64, f64)> {
        let mut v = self.coeff;
        let mut s = self.coeff.norm();
        for f in &self.factors {
            let (a, b) = cache.theta(f, ctl)?;
            v *= a;
            s *= b;
        }
        Ok((v, s))
    }

    /// Value at a point of the upper half plane, by the same engine.
    pub fn value(&self, tau: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
        let id = IntMatrix2::identity();
        let mut cache = PointCache::new(&id, tau);
        Ok(self.eval_cached(&mut cache, ctl)?.0)
    }
}

/// A vector of theta products of equal weight.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaProducts {
    pub products: Vec<ThetaProduct>,
}

impl ThetaProducts {
    pub fn new(products: Vec<ThetaProduct>) -> Result<Self> {
        if let Some(first) = products.first() {
            if products.iter().any(|p| p.factors.len() != first.factors.len()) {
                return Err(ThetaError::InvalidArgument("products of unequal weight".into()));
            }
        }
        Ok(ThetaProducts { products })
    }

    pub fn single(p: ThetaProduct) -> Self {
        ThetaProducts { products: vec![p] }
    }
}

impl FormHandle for ThetaProducts {
    fn len(&self) -> usize {
        self.products.len()
    }

    fn weight2(&self) -> u32 {
        self.products.first().map_or(0, |p| p.factors.len() as u32)
    }

    fn width_bound(&self) -> u64 {
        self.products.iter().fold(1u64, |acc, p| acc.lcm(&p.width_bound()))
    }

    fn eval_at(&self, gamma: &IntMatrix2, w: Complex64, ctl: &SeriesControl) -> Result<FormValues> {
        let mut cache = PointCache::new(gamma, w);
        let mut values = Vec::with_capacity(self.products.len());
        let mut scales = Vec::with_capacity(self.products.len());
        for p in &self.products {
            let (v, s) = p.eval_cached(&mut cache, ctl)?;
            values.push(v);
            scales.push(s);
        }
        Ok(FormValues { values, scales })
    }

    fn structural_zero(&self) -> Vec<bool> {
        self.products.iter().map(|p| p.coeff == Complex64::new(0.0, 0.0)).collect()
    }
}
