//! The matrix of linear forms of the relations and its maximal minors.

use crate::biform::{multilinearize, BiformRelation};
use crate::error::{GeomError, Result};
use num_complex::Complex64;
use presentation::Presentation;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Default bound on the number of minors.
pub const DEFAULT_CAP: u128 = 5000;

/// Monomials below this fraction of the summed magnitudes of their contributions are dropped.
pub const PRUNE: f64 = 1e-12;

/// `coeff * x_var`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearEntry {
    pub coeff: Complex64,
    pub var: usize,
}

/// Row `(mu, k)`, column `j`: the coefficient of `x_j` in slot 2 times the slot-1 variable.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFormMatrix {
    pub labels: Vec<(i64, usize)>,
    pub n_cols: usize,
    pub entries: Vec<Vec<Option<LinearEntry>>>,
}

impl LinearFormMatrix {
    pub fn n_rows(&self) -> usize {
        self.entries.len()
    }

    /// Numerical matrix at a point of the slot-1 space.
    pub fn at(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.map_or(Complex64::new(0.0, 0.0), |e| e.coeff * x[e.var - 1])).collect())
            .collect()
    }

    pub fn nonzeros_in_row(&self, r: usize) -> usize {
        self.entries[r].iter().filter(|e| e.is_some()).count()
    }
}

pub fn omega_from_biforms(rels: &[BiformRelation], n_cols: usize) -> Result<LinearFormMatrix> {
    let mut entries = Vec::with_capacity(rels.len());
    for r in rels {
        let mut row: Vec<Option<LinearEntry>> = vec![None; n_cols];
        for t in &r.terms {
            if t.slot2 == 0 || t.slot2 > n_cols || t.slot1 == 0 || t.slot1 > n_cols {
                return Err(GeomError::InvalidArgument(format!("term x_{} x_{} outside 1..={}", t.slot1, t.slot2, n_cols)));
            }
            if row[t.slot2 - 1].is_some() {
                return Err(GeomError::InvalidArgument(format!("relation ({}, {}) has two terms in column {}", r.mu, r.k, t.slot2)));
            }
            row[t.slot2 - 1] = Some(LinearEntry {
                coeff: t.coeff,
                var: t.slot1,
            });
        }
        entries.push(row);
    }
    Ok(LinearFormMatrix {
        labels: rels.iter().map(|r| (r.mu, r.k)).collect(),
        n_cols,
        entries,
    })
}

pub fn omega_matrix(p: &Presentation) -> Result<LinearFormMatrix> {
    omega_from_biforms(&multilinearize(p), p.rm.n_gen())
}

/// A homogeneous polynomial of degree `c`: exponent vectors to coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorPoly {
    /// Rows of the minor, 1-based.
    pub rows: Vec<usize>,
    pub terms: BTreeMap<Vec<u32>, Complex64>,
}

impl MinorPoly {
    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(*c, |acc, (&k, z)| acc * z.powu(k)))
            .sum()
    }

    /// Sum of `|coeff| |x^e|`, the scale of a value at `x`.
    pub fn abs_eval(&self, x: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(c.norm(), |acc, (&k, z)| acc * z.norm().powi(k as i32)))
            .sum()
    }
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Next `k`-subset of `0..n` in lexicographic order.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Determinant of the rows `rows` expanded column by column over the subsets of used rows.
fn minor(m: &LinearFormMatrix, rows: &[usize]) -> MinorPoly {
    let c = m.n_cols;
    // coefficient and the sum of magnitudes of the products accumulated into it
    type Poly = BTreeMap<Vec<u32>, (Complex64, f64)>;
    let mut states: BTreeMap<u32, Poly> = BTreeMap::new();
    states.insert(0, BTreeMap::from([(vec![0u32; c], (Complex64::new(1.0, 0.0), 1.0))]));
    for col in 0..c {
        let mut next: BTreeMap<u32, Poly> = BTreeMap::new();
        for (mask, poly) in &states {
            for (i, &r) in rows.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let Some(e) = m.entries[r][col] else { continue };
                // rows chosen earlier that sit below row i give the inversions
                let sign = if (mask >> i).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                let target = next.entry(mask | (1 << i)).or_default();
                for (exp, (coeff, mag)) in poly {
                    let mut exp = exp.clone();
                    exp[e.var - 1] += 1;
                    let slot = target.entry(exp).or_insert((Complex64::new(0.0, 0.0), 0.0));
                    slot.0 += coeff * e.coeff * sign;
                    slot.1 += mag * e.coeff.norm();
                }
            }
        }
        states = next;
    }
    let full = (1u32 << rows.len()) - 1;
    let terms = states
        .remove(&full)
        .unwrap_or_default()
        .into_iter()
        .filter(|(_, (z, mag))| z.norm() > PRUNE * mag)
        .map(|(e, (z, _))| (e, z))
        .collect();
    MinorPoly {
        rows: rows.iter().map(|r| r + 1).collect(),
        terms,
    }
}

/// All `c x c` minors, in lexicographic order of their row sets; identically zero ones are kept with no terms.
pub fn minor_equations(m: &LinearFormMatrix, cap: u128) -> Result<Vec<MinorPoly>> {
    let (n, c) = (m.n_rows(), m.n_cols);
    if c == 0 || c > 31 {
        return Err(GeomError::InvalidArgument(format!("{} columns", c)));
    }
    let count = binomial(n as u128, c as u128);
    if count > cap {
        return Err(GeomError::CombinatorialCap { count, cap });
    }
    if n < c {
        return Ok(Vec::new());
    }
    let mut subsets = Vec::with_capacity(count as usize);
    let mut s: Vec<usize> = (0..c).collect();
    loop {
        subsets.push(s.clone());
        if !next_subset(&mut s, n) {
            break;
        }
    }
    Ok(subsets.par_iter().map(|rows| minor(m, rows)).collect())
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct MonomialJson {
    exponents: Vec<u32>,
    coeff: ComplexJson,
}

#[derive(Serialize)]
struct MinorJson {
    rows: Vec<usize>,
    monomials: Vec<MonomialJson>,
}

/// `[{rows, monomials: [{exponents, coeff}]}]` with monomials in increasing exponent order.
pub fn minors_json(minors: &[MinorPoly]) -> serde_json::Value {
    let out: Vec<MinorJson> = minors
        .iter()
        .map(|m| MinorJson {
            rows: m.rows.clone(),
            monomials: m
                .terms
                .iter()
                .map(|(e, z)| MonomialJson {
                    exponents: e.clone(),
                    coeff: ComplexJson { re: z.re, im: z.im },
                })
                .collect(),
        })
        .collect();
    serde_json::to_value(out).expect("plain data serializes")
}
