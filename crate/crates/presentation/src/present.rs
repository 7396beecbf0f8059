//! Presentations of `B_g(theta, tau)` by generators and quadratic relations.

use crate::error::{PresentationError, Result};
use crate::minors::{kernel_basis, KernelBasis};
use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use rm_core::{alpha, structure_constant_theta, RMData};
use serde::Serialize;
use std::fmt;
use theta_engine::{theta_at, IntMatrix2, RationalChar, SeriesControl, UpperHalfPoint};

/// Coefficients below this fraction of the largest one in a relation are dropped.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Relative tolerance of the echelon reduction in [`monic_ordered`].
pub const ECHELON_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Raw,
    Rational,
    Modular,
    Monic,
}

impl Normalization {
    pub fn as_str(&self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::Rational => "rational",
            Normalization::Modular => "modular",
            Normalization::Monic => "monic",
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `coeff * x_left x_right`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationTerm {
    pub left_index: usize,
    pub right_index: usize,
    pub coeff: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub mu: i64,
    pub k: usize,
    pub terms: Vec<RelationTerm>,
}

impl Relation {
    /// The largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.terms.iter().fold(0.0, |a, t| a.max(t.coeff.norm()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub rm: RMData,
    pub tau: UpperHalfPoint,
    pub normalization: Normalization,
    /// Ordered by `mu`, then `k`.
    pub relations: Vec<Relation>,
    /// Pivot columns (1-based) used for each block, indexed by `mu - 1`.
    pub pivots: Vec<Vec<usize>>,
}

impl Presentation {
    /// Column index `j` of a term: the right factor, or the left one once the slots are swapped.
    pub fn column_of(&self, t: &RelationTerm) -> usize {
        match self.normalization {
            Normalization::Monic => t.left_index,
            _ => t.right_index,
        }
    }

    /// Coefficient vector of a relation in `C^c`, indexed by the column `j`.
    pub fn column_vector(&self, rel: &Relation) -> DVector<Complex64> {
        let mut v = DVector::zeros(self.rm.n_gen());
        for t in &rel.terms {
            v[self.column_of(t) - 1] = t.coeff;
        }
        v
    }

    /// Column vectors of the relations of block `mu`.
    pub fn block_vectors(&self, mu: i64) -> Vec<DVector<Complex64>> {
        self.relations.iter().filter(|r| r.mu == mu).map(|r| self.column_vector(r)).collect()
    }

    /// Monomials `(left, right)` of a relation.
    pub fn monomials(rel: &Relation) -> Vec<(usize, usize)> {
        rel.terms.iter().map(|t| (t.left_index, t.right_index)).collect()
    }

    /// Largest `|sum_j v_j C^gamma_{alpha(mu,j),j}| / (sum_j |v_j| |C^gamma_{alpha(mu,j),j}|)` over
    /// all relations and all `gamma`, with the structure constants from their closed form.
    pub fn tensor_residual(&self, ctl: &SeriesControl) -> Result<f64> {
        let rm = &self.rm;
        let c = rm.c();
        let mut table = vec![vec![Complex64::new(0.0, 0.0); rm.l as usize]; (c * c) as usize];
        for a in 1..=c {
            for b in 1..=c {
                for gm in 1..=rm.l {
                    table[((a - 1) * c + b - 1) as usize][(gm - 1) as usize] =
                        structure_constant_theta(rm, a, b, gm, &self.tau, ctl)?;
                }
            }
        }
        let mut worst = 0.0f64;
        for rel in &self.relations {
            let v = self.column_vector(rel);
            for gm in 0..rm.l as usize {
                let mut s = Complex64::new(0.0, 0.0);
                let mut scale = 0.0;
                for j in 1..=c {
                    let a = alpha(rm, rel.mu, j)?;
                    let cst = table[((a - 1) * c + j - 1) as usize][gm];
                    let term = v[(j - 1) as usize] * cst;
                    s += term;
                    scale += term.norm();
                }
                if scale > 0.0 {
                    worst = worst.max(s.norm() / scale);
                }
            }
        }
        Ok(worst)
    }

    fn scaled(&self, factor: Complex64, normalization: Normalization) -> Presentation {
        let mut p = self.clone();
        p.normalization = normalization;
        for r in &mut p.relations {
            for t in &mut r.terms {
                t.coeff *= factor;
            }
        }
        p
    }
}

fn terms_from_vector(rm: &RMData, mu: i64, v: &DVector<Complex64>, swapped: bool) -> Result<Vec<RelationTerm>> {
    let max = v.iter().fold(0.0f64, |a, z| a.max(z.norm()));
    let mut terms = Vec::new();
    for (j0, &coeff) in v.iter().enumerate() {
        if coeff.norm() <= ZERO_THRESHOLD * max || coeff.norm() == 0.0 {
            continue;
        }
        let j = j0 + 1;
        let a = alpha(rm, mu, j as i64)? as usize;
        let (left_index, right_index) = if swapped { (j, a) } else { (a, j) };
        terms.push(RelationTerm {
            left_index,
            right_index,
            coeff,
        });
    }
    Ok(terms)
}

/// The raw presentation: for every block the Cramer-minor kernel vectors, with
/// term `j` on the monomial `x_{alpha(mu,j)} x_j`.
pub fn relations(rm: &RMData, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Presentation> {
    let blocks: Vec<Result<KernelBasis>> = (1..=rm.c()).into_par_iter().map(|mu| kernel_basis(rm, mu, tau, ctl)).collect();
    let mut rels = Vec::new();
    let mut pivots = Vec::new();
    for (mu0, b) in blocks.into_iter().enumerate() {
        let b = b?;
        let mu = mu0 as i64 + 1;
        for (k0, v) in b.vectors.iter().enumerate() {
            rels.push(Relation {
                mu,
                k: k0 + 1,
                terms: terms_from_vector(rm, mu, v, false)?,
            });
        }
        pivots.push(b.pivots);
    }
    Ok(Presentation {
        rm: rm.clone(),
        tau: *tau,
        normalization: Normalization::Raw,
        relations: rels,
        pivots,
    })
}

fn require_raw(p: &Presentation) -> Result<()> {
    if p.normalization != Normalization::Raw {
        return Err(PresentationError::WrongNormalization {
            expected: "raw",
            got: p.normalization.as_str(),
        });
    }
    Ok(())
}

/// `theta(l tau)`, checked to be safely nonzero.
pub fn normalizer(rm: &RMData, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Complex64> {
    let t = theta_at(&RationalChar::zero(), &IntMatrix2::new(rm.l, 0, 0, 1), tau.value(), ctl)?;
    if !(t.norm() > 1e-200) || !t.norm().is_finite() {
        return Err(PresentationError::DegenerateNormalizer(t.norm()));
    }
    Ok(t)
}

/// Every coefficient multiplied by `theta(l tau)^{-(a+d)}`.
pub fn normalize_rational(p: &Presentation, ctl: &SeriesControl) -> Result<Presentation> {
    require_raw(p)?;
    let t = normalizer(&p.rm, &p.tau, ctl)?;
    let f = t.powi(-(p.rm.trace() as i32));
    Ok(p.scaled(f, Normalization::Rational))
}

/// `v-hat = v` when `a + d` is even and `theta(l tau) v` when it is odd.
pub fn normalize_modular(p: &Presentation, ctl: &SeriesControl) -> Result<Presentation> {
    require_raw(p)?;
    if p.rm.l % 2 != 0 {
        return Err(PresentationError::OddLevel(p.rm.l));
    }
    let f = if p.rm.trace() % 2 == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        normalizer(&p.rm, &p.tau, ctl)?
    };
    Ok(p.scaled(f, Normalization::Modular))
}

/// Reduced echelon form of the rows of `vs` with pivots taken from the highest column down.
///
/// Returns `(pivot column, row)` pairs sorted by pivot, each row with a unit pivot
/// entry and zeros in the other pivot columns.
pub fn echelon_from_right(vs: &[DVector<Complex64>]) -> Result<Vec<(usize, DVector<Complex64>)>> {
    let mut rows: Vec<DVector<Complex64>> = vs.to_vec();
    let scale = rows.iter().fold(0.0f64, |a, r| a.max(r.camax()));
    let n = rows.first().map_or(0, |r| r.len());
    let mut done: Vec<(usize, DVector<Complex64>)> = Vec::new();
    for col in (0..n).rev() {
        if rows.is_empty() {
            break;
        }
        let (best, mag) = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r[col].norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= ECHELON_TOL * scale {
            continue;
        }
        let mut piv = rows.swap_remove(best);
        let inv = Complex64::new(1.0, 0.0) / piv[col];
        piv *= inv;
        piv[col] = Complex64::new(1.0, 0.0);
        for r in rows.iter_mut() {
            let f = r[col];
            *r -= &piv * f;
            r[col] = Complex64::new(0.0, 0.0);
        }
        for (_, r) in done.iter_mut() {
            let f = r[col];
            *r -= &piv * f;
            r[col] = Complex64::new(0.0, 0.0);
        }
        done.push((col, piv));
    }
    if !rows.is_empty() {
        let left = rows.iter().fold(0.0f64, |a, r| a.max(r.camax()));
        return Err(PresentationError::LeadingCoeffBelowThreshold(left / scale.max(f64::MIN_POSITIVE)));
    }
    done.sort_by_key(|(c, _)| *c);
    Ok(done)
}

/// Monomial slots swapped to `x_j x_{alpha(mu,j)}` and each block reduced to echelon
/// form under deglex, so that every relation has a unit leading coefficient.
///
/// Since the swapped monomials of one block have distinct first letters, deglex
/// order on them is the order of `j`; relation `k` of a block has the `k`-th
/// smallest leading term.
pub fn monic_ordered(p: &Presentation) -> Result<Presentation> {
    let mut rels = Vec::with_capacity(p.relations.len());
    for mu in 1..=p.rm.c() {
        let vs = p.block_vectors(mu);
        if vs.is_empty() {
            continue;
        }
        for (k0, (_, row)) in echelon_from_right(&vs)?.into_iter().enumerate() {
            rels.push(Relation {
                mu,
                k: k0 + 1,
                terms: terms_from_vector(&p.rm, mu, &row, true)?,
            });
        }
    }
    Ok(Presentation {
        rm: p.rm.clone(),
        tau: p.tau,
        normalization: Normalization::Monic,
        relations: rels,
        pivots: p.pivots.clone(),
    })
}

impl Relation {
    /// Leading monomial under deglex (first position compared first).
    pub fn leading(&self) -> Option<(usize, usize)> {
        self.terms.iter().map(|t| (t.left_index, t.right_index)).max()
    }

    /// Coefficient of the leading monomial.
    pub fn leading_coeff(&self) -> Option<Complex64> {
        let lead = self.leading()?;
        self.terms.iter().find(|t| (t.left_index, t.right_index) == lead).map(|t| t.coeff)
    }
}
