//! Minor determinants of the blocks `M(mu)` and Cramer-type kernel bases.

use crate::error::{PresentationError, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rm_core::{block_m, RMData, RANK_TOL};
use theta_engine::{SeriesControl, UpperHalfPoint};

/// Determinant by Gaussian elimination with partial pivoting; exactly 0 on a zero pivot column.
pub fn det_lu(m: &DMatrix<Complex64>) -> Complex64 {
    let n = m.nrows();
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let (p, mag) = (k..n).map(|i| (i, a[(i, k)].norm())).fold((k, -1.0), |b, x| if x.1 > b.1 { x } else { b });
        if mag == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            a.swap_rows(p, k);
            det = -det;
        }
        let piv = a[(k, k)];
        det *= piv;
        // divide by the scaled pivot so that tiny pivots do not underflow in |piv|^2
        let s = piv.re.abs().max(piv.im.abs());
        let unit = piv.unscale(s);
        for i in k + 1..n {
            let f = a[(i, k)].unscale(s) / unit;
            for j in k + 1..n {
                let t = a[(k, j)];
                a[(i, j)] -= f * t;
            }
        }
    }
    det
}

/// Determinant as a signed sum over permutations (Leibniz); for small sizes only.
pub fn det_permutation(m: &DMatrix<Complex64>) -> Complex64 {
    let n = m.nrows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Complex64::new(0.0, 0.0);
    permute(&mut perm, 0, 1.0, &mut |p, sign| {
        let mut prod = Complex64::new(sign, 0.0);
        for (k, &pk) in p.iter().enumerate() {
            prod *= m[(pk, k)];
        }
        total += prod;
    });
    total
}

fn permute(p: &mut Vec<usize>, i: usize, sign: f64, f: &mut impl FnMut(&[usize], f64)) {
    if i == p.len() {
        f(p, sign);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, if i == j { sign } else { -sign }, f);
        p.swap(i, j);
    }
}

/// Determinant of the columns `cols` (0-based, in the given order) of `m`.
pub fn column_minor(m: &DMatrix<Complex64>, cols: &[usize]) -> Complex64 {
    det_lu(&m.select_columns(cols))
}

fn check_columns(rm: &RMData, cols: &[usize]) -> Result<()> {
    if cols.len() != rm.rank() {
        return Err(PresentationError::InvalidColumns(format!(
            "need {} columns, got {}",
            rm.rank(),
            cols.len()
        )));
    }
    if cols.iter().any(|&c| c < 1 || c > rm.n_gen()) {
        return Err(PresentationError::InvalidColumns(format!("columns {:?} not in 1..={}", cols, rm.n_gen())));
    }
    if cols.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PresentationError::InvalidColumns(format!("columns {:?} not strictly increasing", cols)));
    }
    Ok(())
}

/// `F^{g,mu}_{i_1,...,i_{a+d}}(tau)`, the minor of `M(mu)` on the 1-based columns `cols`.
pub fn minor_f(rm: &RMData, mu: i64, cols: &[usize], tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<Complex64> {
    check_columns(rm, cols)?;
    let m = block_m(rm, mu, tau, ctl)?;
    let idx: Vec<usize> = cols.iter().map(|c| c - 1).collect();
    Ok(column_minor(&m, &idx))
}

/// The same minor as a signed sum of products of theta constants.
pub fn minor_f_permutation(
    rm: &RMData,
    mu: i64,
    cols: &[usize],
    tau: &UpperHalfPoint,
    ctl: &SeriesControl,
) -> Result<Complex64> {
    check_columns(rm, cols)?;
    let m = block_m(rm, mu, tau, ctl)?;
    let idx: Vec<usize> = cols.iter().map(|c| c - 1).collect();
    Ok(det_permutation(&m.select_columns(&idx)))
}

/// Rows and columns scaled to unit max-norm.
fn equilibrate(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let mut e = m.clone();
    for mut row in e.row_iter_mut() {
        let s = row.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        if s > 0.0 {
            row /= Complex64::new(s, 0.0);
        }
    }
    for mut col in e.column_iter_mut() {
        let s = col.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        if s > 0.0 {
            col /= Complex64::new(s, 0.0);
        }
    }
    e
}

/// Greedy left-to-right choice of `rank` independent columns (0-based).
///
/// A column is accepted when its component orthogonal to the columns already
/// chosen exceeds `RANK_TOL` of its norm in the equilibrated matrix.
pub fn select_pivots(m: &DMatrix<Complex64>, rank: usize) -> Result<Vec<usize>> {
    let e = equilibrate(m);
    let mut basis: Vec<DVector<Complex64>> = Vec::new();
    let mut pivots = Vec::new();
    let mut worst = f64::INFINITY;
    for j in 0..e.ncols() {
        if pivots.len() == rank {
            break;
        }
        let col = e.column(j).into_owned();
        let norm = col.norm();
        if norm == 0.0 {
            continue;
        }
        let mut r = col.clone();
        for _ in 0..2 {
            for q in &basis {
                let proj = q.dotc(&r);
                r -= q * proj;
            }
        }
        let rel = r.norm() / norm;
        if rel > RANK_TOL {
            pivots.push(j);
            basis.push(&r / Complex64::new(r.norm(), 0.0));
        } else {
            worst = worst.min(rel);
        }
    }
    if pivots.len() < rank {
        return Err(PresentationError::RankDeficient(if worst.is_finite() { worst } else { 0.0 }));
    }
    Ok(pivots)
}

/// A basis of `ker M(mu)` built from minors on a pivot set.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBasis {
    /// Pivot columns, 1-based and increasing.
    pub pivots: Vec<usize>,
    /// Non-pivot columns, 1-based and increasing; `vectors[k]` belongs to `free[k]`.
    pub free: Vec<usize>,
    pub vectors: Vec<DVector<Complex64>>,
}

/// Kernel vectors from minors: `v_{P_i} = |L|_{P with P_i replaced by n}`, `v_n = -|L|_P`.
pub fn kernel_from_block(m: &DMatrix<Complex64>, pivots: &[usize]) -> Result<KernelBasis> {
    let n = m.ncols();
    let p0: Vec<usize> = pivots.iter().map(|p| p - 1).collect();
    if p0.len() != m.nrows() || p0.iter().any(|&p| p >= n) || p0.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PresentationError::InvalidColumns(format!("bad pivot set {:?}", pivots)));
    }
    let free: Vec<usize> = (0..n).filter(|j| !p0.contains(j)).collect();
    let base = column_minor(m, &p0);
    let mut vectors = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = DVector::zeros(n);
        for (i, &p) in p0.iter().enumerate() {
            let mut cols = p0.clone();
            cols[i] = f;
            v[p] = column_minor(m, &cols);
        }
        v[f] = -base;
        vectors.push(v);
    }
    Ok(KernelBasis {
        pivots: pivots.to_vec(),
        free: free.iter().map(|f| f + 1).collect(),
        vectors,
    })
}

/// Kernel basis of `M(mu)` at `tau` with pivots chosen by rank-revealing selection.
pub fn kernel_basis(rm: &RMData, mu: i64, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<KernelBasis> {
    let m = block_m(rm, mu, tau, ctl)?;
    let pivots: Vec<usize> = select_pivots(&m, rm.rank())?.into_iter().map(|p| p + 1).collect();
    kernel_from_block(&m, &pivots)
}

/// Kernel basis of `M(mu)` at `tau` on a prescribed pivot set.
pub fn kernel_basis_with_pivots(
    rm: &RMData,
    mu: i64,
    pivots: &[usize],
    tau: &UpperHalfPoint,
    ctl: &SeriesControl,
) -> Result<KernelBasis> {
    let m = block_m(rm, mu, tau, ctl)?;
    kernel_from_block(&m, pivots)
}

/// `||M v|| / (||M|| ||v||)`.
pub fn relative_residual(m: &DMatrix<Complex64>, v: &DVector<Complex64>) -> f64 {
    (m * v).norm() / (m.norm() * v.norm())
}

/// Gram determinant of the normalized vectors.
pub fn gram_determinant(vs: &[DVector<Complex64>]) -> f64 {
    let k = vs.len();
    let units: Vec<DVector<Complex64>> = vs.iter().map(|v| v / Complex64::new(v.norm(), 0.0)).collect();
    let g = DMatrix::from_fn(k, k, |i, j| units[i].dotc(&units[j]));
    det_lu(&g).re
}

/// Orthonormal basis of the span of `vs` (columns), dropping numerically dependent vectors.
pub fn orthonormal_span(vs: &[DVector<Complex64>]) -> Vec<DVector<Complex64>> {
    let mut out: Vec<DVector<Complex64>> = Vec::new();
    for v in vs {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &out {
                let p = q.dotc(&r);
                r -= q * p;
            }
        }
        if r.norm() > 1e-12 * v.norm() {
            let n = r.norm();
            out.push(r / Complex64::new(n, 0.0));
        }
    }
    out
}

/// Sine of the largest principal angle between two spans (1 when the dimensions differ).
pub fn subspace_distance(a: &[DVector<Complex64>], b: &[DVector<Complex64>]) -> f64 {
    let qa = orthonormal_span(a);
    let qb = orthonormal_span(b);
    if qa.len() != qb.len() {
        return 1.0;
    }
    let mut worst = 0.0f64;
    for v in &qb {
        let mut r = v.clone();
        for q in &qa {
            let p = q.dotc(&r);
            r -= q * p;
        }
        worst = worst.max(r.norm());
    }
    let mut worst2 = 0.0f64;
    for v in &qa {
        let mut r = v.clone();
        for q in &qb {
            let p = q.dotc(&r);
            r -= q * p;
        }
        worst2 = worst2.max(r.norm());
    }
    worst.max(worst2)
}
