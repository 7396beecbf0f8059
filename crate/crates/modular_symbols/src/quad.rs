//! Globally adaptive Gauss-Kronrod (7, 15) quadrature of vector-valued integrands on `[0, 1]`.

use crate::error::{Result, SymbolError};
use num_complex::Complex64;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights of the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureControl {
    /// Relative tolerance on the largest component.
    pub tolerance: f64,
    /// Evaluation cap per integral.
    pub max_evaluations: usize,
}

impl Default for QuadratureControl {
    fn default() -> Self {
        QuadratureControl {
            tolerance: 1e-8,
            max_evaluations: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    pub values: Vec<Complex64>,
    /// Absolute error estimate, largest over components.
    pub error: f64,
    pub evaluations: usize,
}

struct Piece {
    a: f64,
    b: f64,
    kronrod: Vec<Complex64>,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error).then(o.a.total_cmp(&self.a))
    }
}

fn rule<F>(f: &F, a: f64, b: f64, len: usize) -> Result<Piece>
where
    F: Fn(f64) -> Result<Vec<Complex64>> + Sync,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let nodes: Vec<f64> = (0..15)
        .map(|i| if i < 7 { c - h * XGK[i] } else if i == 7 { c } else { c + h * XGK[14 - i] })
        .collect();
    let vals: Vec<Vec<Complex64>> = nodes.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let mut kronrod = vec![Complex64::new(0.0, 0.0); len];
    let mut gauss = vec![Complex64::new(0.0, 0.0); len];
    for (i, v) in vals.iter().enumerate() {
        let k = if i < 8 { i } else { 14 - i };
        if v.len() != len {
            return Err(SymbolError::QuadratureFailure("integrand changed length".into()));
        }
        for (j, z) in v.iter().enumerate() {
            kronrod[j] += z * WGK[k] * h;
            if k % 2 == 1 {
                gauss[j] += z * WG[k / 2] * h;
            }
        }
    }
    let error = kronrod.iter().zip(&gauss).fold(0.0f64, |e, (k, g)| e.max((k - g).norm()));
    if !error.is_finite() || kronrod.iter().any(|z| !z.is_finite()) {
        return Err(SymbolError::QuadratureFailure(format!("non-finite integrand on [{}, {}]", a, b)));
    }
    Ok(Piece { a, b, kronrod, error })
}

/// Integral over `[0, 1]` of an integrand with `len` components.
pub fn integrate_unit<F>(f: F, len: usize, ctl: &QuadratureControl) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Vec<Complex64>> + Sync,
{
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for k in 0..8 {
        heap.push(rule(&f, k as f64 / 8.0, (k + 1) as f64 / 8.0, len)?);
        evaluations += 15;
    }
    loop {
        let mut total = vec![Complex64::new(0.0, 0.0); len];
        let mut err = 0.0;
        for p in heap.iter() {
            for (t, z) in total.iter_mut().zip(&p.kronrod) {
                *t += z;
            }
            err += p.error;
        }
        let size = total.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if err <= ctl.tolerance * size || err == 0.0 {
            return Ok(QuadratureResult {
                values: total,
                error: err,
                evaluations,
            });
        }
        if evaluations + 30 > ctl.max_evaluations {
            return Err(SymbolError::QuadratureFailure(format!(
                "error {:e} above {:e} after {} evaluations",
                err,
                ctl.tolerance * size,
                evaluations
            )));
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(SymbolError::QuadratureFailure(format!("interval [{}, {}] cannot be split", worst.a, worst.b)));
        }
        heap.push(rule(&f, worst.a, mid, len)?);
        heap.push(rule(&f, mid, worst.b, len)?);
        evaluations += 30;
    }
}
