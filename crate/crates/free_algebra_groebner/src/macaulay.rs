//! The graded pieces `I_d` of a two-sided ideal as row spaces of Macaulay matrices.

use crate::poly::FreePoly;
use crate::word::Word;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::{BTreeMap, HashMap};

/// Relative error assumed for the generator coefficients.
pub const INPUT_ERROR: f64 = 1e-15;

/// A pivot must exceed its error bound by this factor.
pub const ERROR_MARGIN: f64 = 1e4;

/// All words of degree `d` in `c` letters, deglex-decreasing.
pub fn words_desc(c: usize, d: usize) -> Vec<Word> {
    let total = c.pow(d as u32);
    (0..total)
        .rev()
        .map(|mut k| {
            let mut v = vec![0; d];
            for slot in v.iter_mut().rev() {
                *slot = k % c + 1;
                k /= c;
            }
            Word(v)
        })
        .collect()
}

fn column(c: usize, w: &Word) -> usize {
    let k = w.0.iter().fold(0, |a, &x| a * c + (x - 1));
    c.pow(w.degree() as u32) - 1 - k
}

fn macaulay_rows(generators: &[FreePoly], c: usize, d: usize) -> Vec<Vec<(usize, Complex64)>> {
    let mut rows = Vec::new();
    for f in generators {
        let e = f.degree();
        if f.is_zero() || e > d {
            continue;
        }
        for lu in 0..=d - e {
            let lefts = words_desc(c, lu);
            let rights = words_desc(c, d - e - lu);
            for u in &lefts {
                for v in &rights {
                    let g = f.wrap(u, v);
                    let n = g.terms.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    rows.push(g.terms.iter().map(|(w, z)| (column(c, w), z / n)).collect());
                }
            }
        }
    }
    rows
}

/// Rows `u f v` for all generators `f` and words with `|u| + |v| = d - deg f`, each of
/// unit norm; columns are the degree-`d` words in deglex-decreasing order.
pub fn macaulay_matrix(generators: &[FreePoly], c: usize, d: usize) -> DMatrix<Complex64> {
    let rows = macaulay_rows(generators, c, d);
    let mut m = DMatrix::zeros(rows.len(), c.pow(d as u32));
    for (i, r) in rows.iter().enumerate() {
        for &(j, z) in r {
            m[(i, j)] = z;
        }
    }
    m
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Row indices grouped by the connected components of the "share a row" relation on
/// columns; the matrix is block diagonal along them.
fn components(rows: &[Vec<(usize, Complex64)>], nc: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut parent: Vec<usize> = (0..nc).collect();
    for r in rows {
        for w in r.windows(2) {
            let (x, y) = (find(&mut parent, w[0].0), find(&mut parent, w[1].0));
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut by_root: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for j in 0..nc {
        let root = find(&mut parent, j);
        by_root.entry(root).or_default().1.push(j);
    }
    for (i, r) in rows.iter().enumerate() {
        if let Some(&(j, _)) = r.first() {
            let root = find(&mut parent, j);
            by_root.get_mut(&root).expect("column has a root").0.push(i);
        }
    }
    by_root.into_values().collect()
}

/// Scales `s_j` (as `log s_j`) for the substitution `x_j = s_j y_j` that brings the
/// coefficient magnitudes of the monic generators as close to 1 as possible in the
/// least-squares sense.
pub fn balancing_logs(generators: &[FreePoly], c: usize) -> Vec<f64> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for f in generators {
        let Some((lead, lc)) = f.leading() else { continue };
        for (w, z) in &f.terms {
            if w == lead || z.norm() == 0.0 {
                continue;
            }
            let mut row = vec![0.0; c];
            w.0.iter().for_each(|&i| row[i - 1] += 1.0);
            lead.0.iter().for_each(|&i| row[i - 1] -= 1.0);
            a.extend(row);
            b.push(-(z.norm() / lc.norm()).ln());
        }
    }
    if b.is_empty() {
        return vec![0.0; c];
    }
    let m = DMatrix::from_row_slice(b.len(), c, &a);
    let rhs = nalgebra::DVector::from_vec(b);
    m.svd(true, true).solve(&rhs, 1e-12).map(|x| x.iter().copied().collect()).unwrap_or_else(|_| vec![0.0; c])
}

fn rescale(f: &FreePoly, logs: &[f64], sign: f64) -> FreePoly {
    FreePoly::from_terms(f.terms.iter().map(|(w, z)| {
        let e: f64 = w.0.iter().map(|&i| logs[i - 1]).sum();
        (w.clone(), z * (sign * e).exp())
    }))
}

/// Reduced echelon basis of `I_d`: one element per leading word, monic, with every
/// other term on a word that is not a leading word of `I_d`. Sorted by leading word.
///
/// The computation runs in balanced variables (see [`balancing_logs`]), which leaves
/// leading words unchanged.
pub fn reduced_component(generators: &[FreePoly], c: usize, d: usize) -> Vec<FreePoly> {
    let logs = balancing_logs(generators, c);
    let scaled: Vec<FreePoly> = generators.iter().map(|f| rescale(f, &logs, 1.0)).collect();
    reduced_component_raw(&scaled, c, d).iter().map(|f| rescale(f, &logs, -1.0).monic()).collect()
}

fn reduced_component_raw(generators: &[FreePoly], c: usize, d: usize) -> Vec<FreePoly> {
    let rows = macaulay_rows(generators, c, d);
    let words = words_desc(c, d);
    let mut polys = Vec::new();
    for (ri, cols) in components(&rows, words.len()) {
        if ri.is_empty() {
            continue;
        }
        let local: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut m = DMatrix::zeros(ri.len(), cols.len());
        for (i, &r) in ri.iter().enumerate() {
            for &(j, z) in &rows[r] {
                m[(i, local[&j])] = z;
            }
        }
        let block_words: Vec<Word> = cols.iter().map(|&j| words[j].clone()).collect();
        polys.extend(echelon(m, &block_words));
    }
    polys.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
    polys
}

/// Forward elimination with partial pivoting, columns in order.
///
/// A running bound on the rounding error of every entry is carried along; a pivot
/// is accepted only when it exceeds `ERROR_MARGIN` times its own error bound.
fn forward(mut m: DMatrix<Complex64>) -> (DMatrix<Complex64>, Vec<usize>) {
    let (nr, nc) = m.shape();
    let mut err = m.map(|z| INPUT_ERROR * z.norm());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nc {
        if r == nr {
            break;
        }
        let (best, ratio) = (r..nr)
            .map(|i| (i, m[(i, col)].norm() / err[(i, col)].max(f64::MIN_POSITIVE)))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if ratio <= ERROR_MARGIN {
            for i in r..nr {
                m[(i, col)] = Complex64::new(0.0, 0.0);
            }
            continue;
        }
        m.swap_rows(r, best);
        err.swap_rows(r, best);
        let piv = m[(r, col)];
        let inv = Complex64::new(1.0, 0.0) / piv;
        let rel = err[(r, col)] / piv.norm();
        for j in col..nc {
            let z = m[(r, j)] * inv;
            err[(r, j)] = err[(r, j)] / piv.norm() + z.norm() * (rel + f64::EPSILON);
            m[(r, j)] = z;
        }
        for i in r + 1..nr {
            let f = m[(i, col)];
            if f.norm() == 0.0 {
                continue;
            }
            let ef = err[(i, col)];
            for j in col..nc {
                let p = m[(r, j)];
                let z = m[(i, j)] - f * p;
                err[(i, j)] += f.norm() * err[(r, j)] + ef * p.norm() + f64::EPSILON * (z.norm() + (f * p).norm());
                m[(i, j)] = z;
            }
            m[(i, col)] = Complex64::new(0.0, 0.0);
        }
        pivots.push(col);
        r += 1;
    }
    (m, pivots)
}

/// Reduced row echelon form with columns in the given (deglex-decreasing) order.
fn echelon(m: DMatrix<Complex64>, words: &[Word]) -> Vec<FreePoly> {
    let (mut m, pivots) = forward(m);
    let nc = m.ncols();
    for (k, &col) in pivots.iter().enumerate().rev() {
        for i in 0..k {
            let f = m[(i, col)];
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..nc {
                let p = m[(k, j)];
                m[(i, j)] -= f * p;
            }
        }
    }
    pivots
        .iter()
        .enumerate()
        .map(|(i, &col)| {
            let mut f = FreePoly::monomial(words[col].clone(), Complex64::new(1.0, 0.0));
            for j in col + 1..nc {
                let z = m[(i, j)];
                if !pivots.contains(&j) && z.norm() > 0.0 {
                    f.add_term(words[j].clone(), z);
                }
            }
            f
        })
        .collect()
}
