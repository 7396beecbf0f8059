//! The coefficients `v-hat^{mu,k}_j` as modular forms of `tau`.

use crate::error::{PresentationError, Result};
use crate::minors::{kernel_basis, kernel_from_block};
use crate::present::echelon_from_right;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rm_core::{block_characteristics, RMData};
use theta_engine::{FormHandle, FormValues, IntMatrix2, PointCache, RationalChar, SeriesControl, ThetaError, UpperHalfPoint, Q};

/// Generic points at which identically vanishing coefficients are detected.
const PROBES: [(f64, f64); 2] = [(0.123, 0.1), (-0.31, 0.077)];

/// All `v-hat^{mu,k}_j`, laid out by `mu`, then `k`, then `j`.
///
/// The pivot sets are fixed once (at `tau = i`) so that every component is one
/// fixed theta polynomial in `l tau`.
#[derive(Debug, Clone)]
pub struct ModularCoefficients {
    pub rm: RMData,
    /// 1-based pivot columns per block.
    pub pivots: Vec<Vec<usize>>,
    /// Whether the extra factor `theta(l tau)` is present (`a + d` odd).
    pub with_theta: bool,
    chars: Vec<Vec<Vec<Q>>>,
    zero: Vec<bool>,
}

impl ModularCoefficients {
    pub fn new(rm: &RMData, ctl: &SeriesControl) -> Result<Self> {
        if rm.l % 2 != 0 {
            return Err(PresentationError::OddLevel(rm.l));
        }
        let i = UpperHalfPoint::from_parts(0.0, 1.0)?;
        let pivots: Result<Vec<Vec<usize>>> =
            (1..=rm.c()).map(|mu| kernel_basis(rm, mu, &i, ctl).map(|k| k.pivots)).collect();
        Self::with_pivots(rm, pivots?, ctl)
    }

    pub fn with_pivots(rm: &RMData, pivots: Vec<Vec<usize>>, ctl: &SeriesControl) -> Result<Self> {
        if rm.l % 2 != 0 {
            return Err(PresentationError::OddLevel(rm.l));
        }
        let chars: Result<Vec<_>> = (1..=rm.c()).map(|mu| Ok(block_characteristics(rm, mu)?)).collect();
        let mut me = ModularCoefficients {
            rm: rm.clone(),
            pivots,
            with_theta: rm.trace() % 2 != 0,
            chars: chars?,
            zero: Vec::new(),
        };
        let n = me.len();
        let per = me.rm.n_gen();
        let mut zero = vec![true; n];
        for (re, im) in PROBES {
            let v = me.eval_at(&IntMatrix2::identity(), Complex64::new(re, im), ctl)?;
            for (r, chunk) in v.values.chunks(per).enumerate() {
                let max = chunk.iter().fold(0.0f64, |a, z| a.max(z.norm()));
                for (j, z) in chunk.iter().enumerate() {
                    if z.norm() > 1e-10 * max {
                        zero[r * per + j] = false;
                    }
                }
            }
        }
        me.zero = zero;
        Ok(me)
    }

    /// Relations per block.
    pub fn per_block(&self) -> usize {
        self.rm.relations_per_block()
    }

    /// `(mu, k, j)` of component `idx`.
    pub fn index(&self, idx: usize) -> (i64, usize, usize) {
        let c = self.rm.n_gen();
        let per = self.per_block();
        let mu = idx / (per * c);
        let k = (idx / c) % per;
        (mu as i64 + 1, k + 1, idx % c + 1)
    }

    /// Component of `(mu, k, j)`.
    pub fn component(&self, mu: i64, k: usize, j: usize) -> usize {
        let c = self.rm.n_gen();
        ((mu as usize - 1) * self.per_block() + (k - 1)) * c + (j - 1)
    }

    /// Kernel vectors of every block at `gamma * w`, with the automorphy scale.
    fn blocks_at(&self, gamma: &IntMatrix2, w: Complex64, ctl: &SeriesControl) -> Result<(Vec<Vec<Vec<Complex64>>>, f64)> {
        let mut cache = PointCache::new(gamma, w);
        let pt = cache.get(self.rm.l)?.clone();
        let factor = if self.with_theta {
            pt.theta(&RationalChar::zero(), ctl)?
        } else {
            Complex64::new(1.0, 0.0)
        };
        let (rows, cols) = (self.rm.rank(), self.rm.n_gen());
        let mut out = Vec::with_capacity(cols);
        for (mu0, ch) in self.chars.iter().enumerate() {
            let mut m = DMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = pt.theta(&RationalChar::new(ch[i][j], Q::from_integer(0)), ctl)?;
                }
            }
            let kb = kernel_from_block(&m, &self.pivots[mu0])?;
            out.push(kb.vectors.iter().map(|v| v.iter().map(|z| z * factor).collect()).collect());
        }
        let power = (rows + usize::from(self.with_theta)) as i32;
        Ok((out, pt.scale().powi(power)))
    }

    /// Values at `tau`.
    pub fn values(&self, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Vec<Complex64>> {
        Ok(self.eval_at(&IntMatrix2::identity(), tau.value(), ctl)?.values)
    }

    /// Coefficients of the monic (echelon) relations at `gamma * w`, in the same layout;
    /// these are quotients of the forms and have weight 0.
    pub fn monic_at(&self, gamma: &IntMatrix2, w: Complex64, ctl: &SeriesControl) -> Result<Vec<Complex64>> {
        let (blocks, _) = self.blocks_at(gamma, w, ctl)?;
        let mut out = Vec::with_capacity(self.len());
        for vs in blocks {
            let dv: Vec<_> = vs.into_iter().map(nalgebra::DVector::from_vec).collect();
            for (_, row) in echelon_from_right(&dv)? {
                out.extend(row.iter().copied());
            }
        }
        Ok(out)
    }
}

impl FormHandle for ModularCoefficients {
    fn len(&self) -> usize {
        self.rm.n_gen() * self.per_block() * self.rm.n_gen()
    }

    fn weight2(&self) -> u32 {
        2 * self.rm.w as u32
    }

    fn width_bound(&self) -> u64 {
        2 * (self.rm.l as u64).pow(3)
    }

    fn eval_at(&self, gamma: &IntMatrix2, w: Complex64, ctl: &SeriesControl) -> theta_engine::Result<FormValues> {
        let (blocks, scale) = self.blocks_at(gamma, w, ctl).map_err(|e| match e {
            PresentationError::Rm(rm_core::RmError::Theta(t)) => t,
            other => ThetaError::InvalidArgument(other.to_string()),
        })?;
        let values: Vec<Complex64> = blocks.into_iter().flatten().flatten().collect();
        let scales = vec![scale; values.len()];
        Ok(FormValues { values, scales })
    }

    fn structural_zero(&self) -> Vec<bool> {
        if self.zero.is_empty() {
            vec![false; self.len()]
        } else {
            self.zero.clone()
        }
    }
}
