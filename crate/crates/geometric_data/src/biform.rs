//! Bilinear forms obtained by putting the two factors of each quadratic monomial in separate slots.

use crate::error::{GeomError, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use presentation::Presentation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `coeff * (x_slot1)_1 (x_slot2)_2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiformTerm {
    pub slot1: usize,
    pub slot2: usize,
    pub coeff: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiformRelation {
    pub mu: i64,
    pub k: usize,
    pub terms: Vec<BiformTerm>,
}

impl BiformRelation {
    /// `f(u, v)`, with `u` and `v` indexed from `x_1`.
    pub fn eval(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|t| t.coeff * u[t.slot1 - 1] * v[t.slot2 - 1]).sum()
    }

    pub fn coeff_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// One bilinear form per relation; slot 1 carries `x_{alpha(mu,j)}` and slot 2 carries `x_j`.
pub fn multilinearize(p: &Presentation) -> Vec<BiformRelation> {
    p.relations
        .iter()
        .map(|r| {
            let mut terms: Vec<BiformTerm> = r
                .terms
                .iter()
                .map(|t| {
                    let j = p.column_of(t);
                    let other = if j == t.right_index { t.left_index } else { t.right_index };
                    BiformTerm {
                        slot1: other,
                        slot2: j,
                        coeff: t.coeff,
                    }
                })
                .collect();
            terms.sort_by_key(|t| t.slot2);
            BiformRelation { mu: r.mu, k: r.k, terms }
        })
        .collect()
}

fn check_point(x: &[Complex64], n: usize, name: &str) -> Result<f64> {
    if x.len() != n {
        return Err(GeomError::InvalidArgument(format!("{} has {} coordinates, expected {}", name, x.len(), n)));
    }
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(GeomError::NotProjective(format!("{} is zero or not finite", name)));
    }
    Ok(norm)
}

fn n_vars(rels: &[BiformRelation]) -> usize {
    rels.iter().flat_map(|r| r.terms.iter().map(|t| t.slot1.max(t.slot2))).max().unwrap_or(0)
}

/// Largest `|f(u, v)| / (|u| |v| |f|)` over the relations.
pub fn graph_residual(rels: &[BiformRelation], n: usize, u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    if n < n_vars(rels) {
        return Err(GeomError::InvalidArgument(format!("relations use more than {} variables", n)));
    }
    let nu = check_point(u, n, "u")?;
    let nv = check_point(v, n, "v")?;
    Ok(rels.iter().fold(0.0f64, |m, r| {
        let s = r.coeff_norm();
        if s == 0.0 {
            m
        } else {
            m.max(r.eval(u, v).norm() / (nu * nv * s))
        }
    }))
}

/// Whether `(u, v)` is a common zero of all relations up to the relative tolerance `tol`.
pub fn graph_member(rels: &[BiformRelation], u: &[Complex64], v: &[Complex64], tol: f64) -> Result<bool> {
    Ok(graph_residual(rels, u.len(), u, v)? < tol)
}

/// Rows `f_r(u, .)` as a matrix acting on `v` (`slot = 2`), or `f_r(., v)` acting on `u` (`slot = 1`).
fn linear_part(rels: &[BiformRelation], n: usize, fixed: &[Complex64], slot: u8) -> DMatrix<Complex64> {
    let mut a = DMatrix::zeros(rels.len(), n);
    for (i, r) in rels.iter().enumerate() {
        let s = r.coeff_norm().max(f64::MIN_POSITIVE);
        for t in &r.terms {
            if slot == 2 {
                a[(i, t.slot2 - 1)] += t.coeff * fixed[t.slot1 - 1] / s;
            } else {
                a[(i, t.slot1 - 1)] += t.coeff * fixed[t.slot2 - 1] / s;
            }
        }
    }
    a
}

/// Unit vector minimizing `|a x|`.
fn least_singular(a: &DMatrix<Complex64>) -> DVector<Complex64> {
    let g = a.adjoint() * a;
    let eig = g.symmetric_eigen();
    let (i, _) = eig.eigenvalues.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &e)| if e < b.1 { (i, e) } else { b });
    eig.eigenvectors.column(i).into_owned()
}

/// Gauss-Newton steps on `f(u, v) = 0` in the affine charts `<u0, u> = <v0, v> = 1`.
fn polish(rels: &[BiformRelation], n: usize, u: &mut DVector<Complex64>, v: &mut DVector<Complex64>, steps: usize) {
    let m = rels.len();
    for _ in 0..steps {
        *u /= Complex64::new(u.norm(), 0.0);
        *v /= Complex64::new(v.norm(), 0.0);
        let (u0, v0) = (u.clone(), v.clone());
        let mut jac = DMatrix::zeros(m + 2, 2 * n);
        let mut res = DVector::zeros(m + 2);
        for (i, r) in rels.iter().enumerate() {
            let s = r.coeff_norm().max(f64::MIN_POSITIVE);
            res[i] = r.eval(u.as_slice(), v.as_slice()) / s;
            for t in &r.terms {
                jac[(i, t.slot1 - 1)] += t.coeff * v[t.slot2 - 1] / s;
                jac[(i, n + t.slot2 - 1)] += t.coeff * u[t.slot1 - 1] / s;
            }
        }
        for a in 0..n {
            jac[(m, a)] = u0[a].conj();
            jac[(m + 1, n + a)] = v0[a].conj();
        }
        if res.norm() < 1e-15 {
            return;
        }
        let Ok(step) = jac.svd(true, true).solve(&(-res), 1e-14) else { return };
        for a in 0..n {
            u[a] += step[a];
            v[a] += step[n + a];
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphPoint {
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub residual: f64,
}

/// Alternating least squares for a common zero: with one slot fixed every relation is
/// linear in the other, which is updated to the least singular vector. Each start
/// ends with Gauss-Newton polishing.
pub fn als_search(rels: &[BiformRelation], n: usize, starts: usize, iterations: usize, seed: u64) -> Result<GraphPoint> {
    if n < n_vars(rels) || n == 0 {
        return Err(GeomError::InvalidArgument(format!("{} variables do not cover the relations", n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<GraphPoint> = None;
    for _ in 0..starts.max(1) {
        let mut u = DVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let mut v = DVector::zeros(n);
        for _ in 0..iterations.max(1) {
            v = least_singular(&linear_part(rels, n, u.as_slice(), 2));
            u = least_singular(&linear_part(rels, n, v.as_slice(), 1));
        }
        polish(rels, n, &mut u, &mut v, 30);
        let residual = graph_residual(rels, n, u.as_slice(), v.as_slice())?;
        if best.as_ref().map_or(true, |b| residual < b.residual) {
            best = Some(GraphPoint {
                u: u.iter().copied().collect(),
                v: v.iter().copied().collect(),
                residual,
            });
        }
    }
    Ok(best.expect("at least one start"))
}
