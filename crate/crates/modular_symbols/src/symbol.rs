//! Limiting modular symbols as chains of geodesics between cusps.

use crate::cf::{cf_expand, convergents, lyapunov};
use crate::error::{Result, SymbolError};
use crate::group::{member_big, BigMatrix2, Cusp, GroupSpec};
use rm_core::QuadraticSurd;
use serde::Serialize;
use theta_engine::IntMatrix2;

/// How the weight vectors enter the pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// `prod_i (n_i tau + m_i)`, empty product 1.
    Product,
    /// `sum_i (n_i tau + m_i)` as printed, empty sum 0.
    Sum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightVectors {
    pub n: Vec<i64>,
    pub m: Vec<i64>,
    pub mode: WeightMode,
}

impl WeightVectors {
    pub fn new(n: Vec<i64>, m: Vec<i64>, mode: WeightMode) -> Result<Self> {
        if n.len() != m.len() {
            return Err(SymbolError::InvalidArgument(format!("weight vectors of lengths {} and {}", n.len(), m.len())));
        }
        Ok(WeightVectors { n, m, mode })
    }

    pub fn factor(&self, tau: num_complex::Complex64) -> num_complex::Complex64 {
        let terms = self.n.iter().zip(&self.m).map(|(&n, &m)| tau * n as f64 + m as f64);
        match self.mode {
            WeightMode::Product => terms.product(),
            WeightMode::Sum => terms.sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub from: Cusp,
    pub to: Cusp,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolChain {
    pub segments: Vec<Segment>,
    pub scale: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_vectors: Option<WeightVectors>,
}

/// `(g_n^{-1} 0, g_n^{-1} oo)` for one period after the preperiod, scaled by `1/(m lambda)`.
pub fn limiting_symbol(theta: &QuadraticSurd, spec: &GroupSpec) -> Result<SymbolChain> {
    spec.validate()?;
    let cf = cf_expand(theta)?;
    let pre = cf.preperiod.len();
    let m = cf.period.len();
    let mut segments = Vec::with_capacity(m);
    for n in pre + 1..=pre + m {
        let inv = convergents(&cf, n).g.inverse_sl2();
        segments.push(Segment {
            from: inv.act_cusp(&Cusp::from_i64(0, 1)?)?,
            to: inv.act_cusp(&Cusp::infinity())?,
        });
    }
    Ok(SymbolChain {
        segments,
        scale: 1.0 / (m as f64 * lyapunov(theta)?),
        weight_vectors: None,
    })
}

/// The single geodesic `{0, g(0)}` for `g = h^power`, scaled by `1/log` of the larger eigenvalue of `g`.
///
/// `h` must fix `theta`, and `g` must lie in `spec` (checked exactly).
pub fn hyperbolic_symbol(theta: &QuadraticSurd, h: &IntMatrix2, power: u32, spec: &GroupSpec) -> Result<SymbolChain> {
    if theta.mobius(h.a, h.b, h.c, h.d).as_ref() != Some(theta) {
        return Err(SymbolError::InvalidArgument(format!("{} does not fix theta", h)));
    }
    let t = h.trace();
    if t.abs() <= 2 || h.det() != 1 {
        return Err(SymbolError::InvalidArgument(format!("{} is not hyperbolic in SL2(Z)", h)));
    }
    let g = BigMatrix2::from(h).pow(power);
    if !member_big(&g, spec)? {
        return Err(SymbolError::NotInGroup(format!("{}^{} is not in {}", h, power, spec)));
    }
    let log_eig = hyperbolic_log(h, power);
    let zero = Cusp::from_i64(0, 1)?;
    Ok(SymbolChain {
        segments: vec![Segment {
            to: g.act_cusp(&zero)?,
            from: zero,
        }],
        scale: 1.0 / log_eig,
        weight_vectors: None,
    })
}

/// `log` of the larger eigenvalue of `h^power`, from the trace of `h`.
pub fn hyperbolic_log(h: &IntMatrix2, power: u32) -> f64 {
    let t = (h.trace().abs() as f64).max(2.0);
    ((t + (t * t - 4.0).sqrt()) / 2.0).ln() * power as f64
}
