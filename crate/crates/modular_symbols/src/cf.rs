//! Continued fractions of real quadratic irrationals.

use crate::error::{Result, SymbolError};
use crate::group::BigMatrix2;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rm_core::QuadraticSurd;
use serde::Serialize;
use std::collections::HashMap;
use theta_engine::IntMatrix2;

/// `theta = integer_part + [0; preperiod, period, period, ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CFExpansion {
    #[serde(serialize_with = "as_string")]
    pub integer_part: BigInt,
    #[serde(serialize_with = "as_strings")]
    pub preperiod: Vec<BigInt>,
    #[serde(serialize_with = "as_strings")]
    pub period: Vec<BigInt>,
    /// Squarefree radicand of the field, when known.
    #[serde(skip)]
    pub radicand: Option<BigInt>,
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn as_strings<S: serde::Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

impl CFExpansion {
    /// Partial quotient `k_n`, `n >= 1`.
    pub fn quotient(&self, n: usize) -> &BigInt {
        assert!(n >= 1, "partial quotients start at 1");
        let pre = self.preperiod.len();
        if n <= pre {
            &self.preperiod[n - 1]
        } else {
            &self.period[(n - pre - 1) % self.period.len()]
        }
    }
}

/// Exact expansion; the period is found when a complete quotient recurs.
pub fn cf_expand(theta: &QuadraticSurd) -> Result<CFExpansion> {
    if theta.is_rational() {
        return Err(SymbolError::RationalInput(format!("{}", theta.to_f64())));
    }
    let integer_part = theta.floor();
    let mut x = theta.sub(&QuadraticSurd::rational(integer_part.clone(), BigInt::one(), &theta.d));
    let mut seen: HashMap<QuadraticSurd, usize> = HashMap::new();
    let mut quotients = Vec::new();
    loop {
        // x in (0, 1); the next complete quotient is 1/x > 1
        let y = x.recip().expect("irrational");
        if let Some(&start) = seen.get(&y) {
            let period = quotients.split_off(start);
            return Ok(CFExpansion {
                integer_part,
                preperiod: quotients,
                period,
                radicand: Some(theta.d.clone()),
            });
        }
        seen.insert(y.clone(), quotients.len());
        let k = y.floor();
        x = y.sub(&QuadraticSurd::rational(k.clone(), BigInt::one(), &y.d));
        quotients.push(k);
    }
}

/// `(P y + Q) / (R y + S)` in exact arithmetic.
fn mobius_big(m: &BigMatrix2, y: &QuadraticSurd) -> QuadraticSurd {
    let f = |n: &BigInt| QuadraticSurd::rational(n.clone(), BigInt::one(), &y.d);
    let num = f(&m.a).mul(y).add(&f(&m.b));
    let den = f(&m.c).mul(y).add(&f(&m.d));
    num.div(&den).expect("nonzero denominator")
}

fn quotient_product(ks: &[BigInt]) -> BigMatrix2 {
    ks.iter().fold(BigMatrix2::identity(), |acc, k| {
        acc.mul(&BigMatrix2 {
            a: k.clone(),
            b: BigInt::one(),
            c: BigInt::one(),
            d: BigInt::zero(),
        })
    })
}

/// The surd with the given expansion: the periodic tail is the root `> 1` of its fixed-point quadratic.
pub fn cf_value(cf: &CFExpansion) -> Result<QuadraticSurd> {
    if cf.period.is_empty() || cf.period.iter().chain(cf.preperiod.iter()).any(|k| !k.is_positive()) {
        return Err(SymbolError::InvalidArgument("partial quotients must be positive with a nonempty period".into()));
    }
    let m = quotient_product(&cf.period);
    // y = (a y + b) / (c y + d)  <=>  c y^2 + (d - a) y - b = 0
    let disc = (&m.d - &m.a) * (&m.d - &m.a) + BigInt::from(4) * &m.c * &m.b;
    let two_c = BigInt::from(2) * &m.c;
    let root = cf.radicand.as_ref().and_then(|d| {
        let s2 = &disc / d;
        let s = s2.sqrt();
        ((&s2 * d == disc) && &s * &s == s2).then(|| (s, d.clone()))
    });
    let tail = match root {
        Some((s, d)) => QuadraticSurd::new(&m.a - &m.d, s, two_c, d),
        None => QuadraticSurd::new(&m.a - &m.d, BigInt::one(), two_c, disc),
    };
    let head = quotient_product(&cf.preperiod);
    let y = mobius_big(&head, &tail);
    // theta = integer_part + 1 / y
    let frac = y.recip().expect("nonzero");
    Ok(frac.add(&QuadraticSurd::rational(cf.integer_part.clone(), BigInt::one(), &frac.d)))
}

/// `p_n`, `q_n` and `g_n = [[p_{n-1}, p_n], [q_{n-1}, q_n]]` of `[0; k_1, k_2, ...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub g: BigMatrix2,
}

/// Convergents of the fractional part; `n = 0` gives `0/1`.
pub fn convergents(cf: &CFExpansion, n: usize) -> Convergent {
    let (mut p0, mut p1) = (BigInt::one(), BigInt::zero());
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    for i in 1..=n {
        let k = cf.quotient(i);
        let p2 = k * &p1 + &p0;
        let q2 = k * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    Convergent {
        g: BigMatrix2 {
            a: p0,
            b: p1.clone(),
            c: q0,
            d: q1.clone(),
        },
        p: p1,
        q: q1,
    }
}

/// `g_n` as a machine-size matrix.
pub fn convergent_matrix(cf: &CFExpansion, n: usize) -> Result<IntMatrix2> {
    convergents(cf, n)
        .g
        .to_int()
        .ok_or_else(|| SymbolError::Overflow(format!("g_{} does not fit in 64 bits", n)))
}

fn spectral_log(m: &BigMatrix2) -> f64 {
    // eigenvalues of a matrix of determinant +-1 with positive entries: t/2 + sqrt(t^2/4 -+ 1)
    let t = m.trace().to_f64().unwrap_or(f64::INFINITY);
    let det = m.det().to_f64().unwrap_or(1.0);
    if t.is_finite() && t < 1e150 {
        ((t + (t * t - 4.0 * det).sqrt()) / 2.0).ln()
    } else {
        let bits = m.trace().bits();
        let shift = bits.saturating_sub(60);
        let top = (m.trace() >> shift).to_f64().unwrap_or(1.0);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// `lim log(q_n) / n`, as `log(spectral radius of the period product) / m`.
pub fn lyapunov(theta: &QuadraticSurd) -> Result<f64> {
    let cf = cf_expand(theta)?;
    Ok(spectral_log(&quotient_product(&cf.period)) / cf.period.len() as f64)
}

fn log_big(x: &BigInt) -> f64 {
    let shift = x.bits().saturating_sub(60);
    (x >> shift).to_f64().expect("60 bits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Slope of `log q_n` between `n = from` and the largest `n <= to` in the same class mod the period.
pub fn lyapunov_empirical(theta: &QuadraticSurd, from: usize, to: usize) -> Result<f64> {
    let cf = cf_expand(theta)?;
    let m = cf.period.len();
    let top = from + (to - from) / m * m;
    if top == from {
        return Err(SymbolError::InvalidArgument("range shorter than the period".into()));
    }
    let a = convergents(&cf, from).q;
    let b = convergents(&cf, top).q;
    Ok((log_big(&b) - log_big(&a)) / (top - from) as f64)
}
