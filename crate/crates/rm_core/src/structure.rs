//! Structure constants `C^gamma_{alpha,beta}` and the blocks `M(mu)`.

use crate::error::{Result, RmError};
use crate::rmdata::RMData;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use std::f64::consts::PI;
use theta_engine::series::theta_series;
use theta_engine::{frac_floor, IntMatrix2, PreparedPoint, RationalChar, SeriesControl, UpperHalfPoint, Q};

/// Relative singular-value cutoff of the rank test.
pub const RANK_TOL: f64 = 1e-8;

fn check_index(name: &str, v: i64, hi: i64) -> Result<()> {
    if v < 1 || v > hi {
        return Err(RmError::IndexOutOfRange(format!("{} = {} not in 1..={}", name, v, hi)));
    }
    Ok(())
}

/// Representative in `{1, ..., n}` of `x mod n`.
pub fn rep(x: i64, n: i64) -> i64 {
    let r = x.rem_euclid(n);
    if r == 0 {
        n
    } else {
        r
    }
}

/// `alpha(mu, beta)`: the representative of `d (mu - beta)` mod `c` in `{1, ..., c}`.
pub fn alpha(rm: &RMData, mu: i64, beta: i64) -> Result<i64> {
    let c = rm.c();
    check_index("mu", mu, c)?;
    check_index("beta", beta, c)?;
    Ok(rep(rm.d() * (mu - beta), c))
}

/// Index set of the structure-constant series as `residue mod modulus`,
/// or `None` when the two congruences have no common solution.
pub fn index_set(g1: &IntMatrix2, g2: &IntMatrix2, a: i64, b: i64, gm: i64) -> Result<Option<(i128, i128)>> {
    let g12 = g1.mul(g2)?;
    let (c1, c2, c12) = (g1.c as i128, g2.c as i128, g12.c as i128);
    if c1 <= 0 || c2 <= 0 || c12 <= 0 {
        return Err(RmError::IndexOutOfRange("matrices must have positive degree".into()));
    }
    check_index("alpha", a, g1.c)?;
    check_index("beta", b, g2.c)?;
    check_index("gamma", gm, g12.c)?;
    let (a, b, gm) = (a as i128, b as i128, gm as i128);
    let (d2, d12) = (g2.d as i128, g12.d as i128);
    let (r1, m1) = (-c1 * gm + c12 * a, c12 * c1);
    let (r2, m2) = (c2 * d12 * gm - c12 * d2 * b, c12 * c2);
    Ok(crt(r1, m1, r2, m2))
}

fn crt(r1: i128, m1: i128, r2: i128, m2: i128) -> Option<(i128, i128)> {
    let e = m1.extended_gcd(&m2);
    let g = e.gcd;
    if (r2 - r1).rem_euclid(g) != 0 {
        return None;
    }
    let l = m1 / g * m2;
    // r1 + m1 * t with m1 t = r2 - r1 mod m2
    let t = ((r2 - r1) / g % (m2 / g)) * (e.x % (m2 / g)) % (m2 / g);
    Some(((r1 + m1 * t).rem_euclid(l), l))
}

/// `sum_{m in I} exp(pi i tau m^2 / (c1 c2 c12))` over the congruence-defined index set.
pub fn structure_constant_series(
    g1: &IntMatrix2,
    g2: &IntMatrix2,
    a: i64,
    b: i64,
    gm: i64,
    tau: &UpperHalfPoint,
    ctl: &SeriesControl,
) -> Result<Complex64> {
    let Some((n0, step)) = index_set(g1, g2, a, b, gm)? else {
        return Ok(Complex64::zero());
    };
    let g12 = g1.mul(g2)?;
    let k = (g1.c as f64) * (g2.c as f64) * (g12.c as f64);
    let t = tau.value();
    let log_mag = |m: f64| -PI * t.im * m * m / k;
    let term = |m: i128| {
        let mf = m as f64;
        let ph = (PI * t.re * mf * mf / k).rem_euclid(2.0 * PI);
        log_mag(mf).exp() * Complex64::new(ph.cos(), ph.sin())
    };
    let centre = n0 - (n0 as f64 / step as f64).round() as i128 * step;
    let mut sum = term(centre);
    let mut max_mag = sum.norm();
    let tail = |m: i128, dir: i128| {
        let t1 = log_mag(m as f64);
        let t2 = log_mag((m + dir * step) as f64);
        if t2 < t1 {
            t1.exp() / (1.0 - (t2 - t1).exp())
        } else {
            f64::INFINITY
        }
    };
    for j in 1..=ctl.max_terms as i128 {
        let (up, down) = (centre + j * step, centre - j * step);
        let (tu, td) = (term(up), term(down));
        sum += tu + td;
        max_mag = max_mag.max(tu.norm()).max(td.norm());
        let bound = tail(up + step, 1) + tail(down - step, -1);
        if bound <= ctl.tolerance * sum.norm() || bound <= 1e-18 * max_mag {
            return Ok(sum);
        }
    }
    Err(theta_engine::ThetaError::NonConvergence(ctl.max_terms).into())
}

/// Characteristic `((a+d) alpha - gamma)/l` of a nonzero structure constant, or
/// `None` when `alpha != d (gamma - beta) mod c`.
pub fn structure_char(rm: &RMData, a: i64, b: i64, gm: i64) -> Result<Option<Q>> {
    let c = rm.c();
    check_index("alpha", a, c)?;
    check_index("beta", b, c)?;
    check_index("gamma", gm, rm.l)?;
    if (a - rm.d() * (gm - b)).rem_euclid(c) != 0 {
        return Ok(None);
    }
    Ok(Some(Q::new(rm.trace() * a - gm, rm.l)))
}

/// `C^gamma_{alpha,beta} = theta_{((a+d) alpha - gamma)/l}(l tau)` or 0.
pub fn structure_constant_theta(
    rm: &RMData,
    a: i64,
    b: i64,
    gm: i64,
    tau: &UpperHalfPoint,
    ctl: &SeriesControl,
) -> Result<Complex64> {
    match structure_char(rm, a, b, gm)? {
        None => Ok(Complex64::zero()),
        Some(r) => {
            let lt = tau.value() * rm.l as f64;
            Ok(theta_series(&r, &Q::zero(), Complex64::zero(), lt, ctl)?)
        }
    }
}

/// `q(mu) = d mu / c - mu / l + 1/(a+d)`.
pub fn q_mu(rm: &RMData, mu: i64) -> Result<Q> {
    check_index("mu", mu, rm.c())?;
    Ok(Q::new(rm.d() * mu, rm.c()) - Q::new(mu, rm.l) + Q::new(1, rm.trace()))
}

/// `Lambda_{i,j} = -d j / c - i/(a+d) mod 1`, `(a+d)` rows by `c` columns.
pub fn lambda_matrix(rm: &RMData) -> Vec<Vec<Q>> {
    (1..=rm.trace())
        .map(|i| {
            (1..=rm.c())
                .map(|j| frac_floor(&(Q::new(-rm.d() * j, rm.c()) - Q::new(i, rm.trace()))).0)
                .collect()
        })
        .collect()
}

/// Table form of `Lambda`: `l * (-Lambda mod 1)`.
pub fn lambda_display(rm: &RMData) -> Vec<Vec<i64>> {
    lambda_matrix(rm)
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let neg = frac_floor(&-*x).0 * rm.l;
                    *neg.numer()
                })
                .collect()
        })
        .collect()
}

/// Characteristics `q(mu) + Lambda_{i,j}` of the entries of `M(mu)`.
pub fn block_characteristics(rm: &RMData, mu: i64) -> Result<Vec<Vec<Q>>> {
    let q = q_mu(rm, mu)?;
    Ok(lambda_matrix(rm).into_iter().map(|row| row.into_iter().map(|x| q + x).collect()).collect())
}

/// `M(mu)` with every entry evaluated at a prepared point standing for `l tau`.
pub fn block_from_point(rm: &RMData, mu: i64, pt: &PreparedPoint, ctl: &SeriesControl) -> Result<DMatrix<Complex64>> {
    let chars = block_characteristics(rm, mu)?;
    let (rows, cols) = (rm.rank(), rm.n_gen());
    let mut m = DMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = pt.theta(&RationalChar::new(chars[i][j], Q::zero()), ctl)?;
        }
    }
    Ok(m)
}

/// `M(mu)` at `tau` without the rank test.
pub fn block_m_unchecked(rm: &RMData, mu: i64, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<DMatrix<Complex64>> {
    let pt = PreparedPoint::new(&IntMatrix2::new(rm.l, 0, 0, 1), tau.value())?;
    block_from_point(rm, mu, &pt, ctl)
}

/// Smallest singular value relative to the largest.
pub fn relative_min_singular(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.max();
    if max == 0.0 {
        return 0.0;
    }
    sv.min() / max
}

/// `M(mu)_{i,j} = theta_{q(mu) + Lambda_{i,j}}(l tau)`, checked to have rank `a + d`.
pub fn block_m(rm: &RMData, mu: i64, tau: &UpperHalfPoint, ctl: &SeriesControl) -> Result<DMatrix<Complex64>> {
    let m = block_m_unchecked(rm, mu, tau, ctl)?;
    let s = relative_min_singular(&m);
    if !(s > RANK_TOL) {
        return Err(RmError::RankDeficient(s));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_solutions() {
        assert_eq!(crt(2, 3, 3, 5), Some((8, 15)));
        assert_eq!(crt(1, 4, 2, 6), None);
        assert_eq!(crt(3, 4, 1, 6), Some((7, 12)));
        let (r, m) = crt(-5, 36, 19, 48).unwrap();
        assert_eq!(m, 144);
        assert_eq!((r + 5).rem_euclid(36), 0);
        assert_eq!((r - 19).rem_euclid(48), 0);
    }
}
