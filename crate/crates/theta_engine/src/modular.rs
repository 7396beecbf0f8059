//! Integer matrices and evaluation of theta constants at `M * tau` for any
//! integer matrix `M` of positive determinant.
//!
//! `M` is split as `gamma * [[A, B], [0, D]]`, the point `(A tau + B)/D` is
//! moved to the fundamental domain, and the resulting `SL2(Z)` element is
//! peeled into `T^k S` steps. Each step acts on the characteristic exactly:
//!
//! * `theta_{r,s}(tau + k) = exp(-pi i k r(r+1)) theta_{r, s + k r + k/2}(tau)`
//! * `theta_{r,s}(-1/tau) = sqrt(-i tau) exp(2 pi i r s) theta_{s,-r}(tau)`
//!
//! so only one well-conditioned series is summed per characteristic.

use crate::error::{Result, ThetaError};
use crate::series::theta_series;
use crate::types::{frac_floor, RationalChar, SeriesControl, Q};
use num_complex::Complex64;
use num_traits::Zero;
use std::f64::consts::PI;
use std::fmt;

/// A 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl IntMatrix2 {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix2 { a, b, c, d }
    }

    pub const fn identity() -> Self {
        IntMatrix2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn trace(&self) -> i128 {
        self.a as i128 + self.d as i128
    }

    pub fn is_sl2(&self) -> bool {
        self.det() == 1
    }

    pub fn mul(&self, o: &IntMatrix2) -> Result<IntMatrix2> {
        let w = Mat2::from(*self).mul(&Mat2::from(*o))?;
        w.to_i64()
    }

    /// Inverse of a matrix with determinant `+-1`.
    pub fn inverse(&self) -> Result<IntMatrix2> {
        match self.det() {
            1 => Ok(IntMatrix2::new(self.d, -self.b, -self.c, self.a)),
            -1 => Ok(IntMatrix2::new(-self.d, self.b, self.c, -self.a)),
            _ => Err(ThetaError::InvalidArgument(format!("{} is not unimodular", self))),
        }
    }

    pub fn pow(&self, n: u32) -> Result<IntMatrix2> {
        let mut acc = IntMatrix2::identity();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Fractional linear action on a complex point.
    pub fn act(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / (tau * self.c as f64 + self.d as f64)
    }

    /// `c tau + d`.
    pub fn j(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    /// Membership in the theta group: `ab` and `cd` even.
    pub fn in_gamma_1_2(&self) -> bool {
        self.is_sl2() && (self.a as i128 * self.b as i128) % 2 == 0 && (self.c as i128 * self.d as i128) % 2 == 0
    }
}

/// Wide matrix used inside the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat2 {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl From<IntMatrix2> for Mat2 {
    fn from(m: IntMatrix2) -> Self {
        Mat2::new(m.a as i128, m.b as i128, m.c as i128, m.d as i128)
    }
}

impl Mat2 {
    pub const fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> Result<i128> {
        let x = self.a.checked_mul(self.d).ok_or(ThetaError::Overflow("determinant"))?;
        let y = self.b.checked_mul(self.c).ok_or(ThetaError::Overflow("determinant"))?;
        x.checked_sub(y).ok_or(ThetaError::Overflow("determinant"))
    }

    pub fn mul(&self, o: &Mat2) -> Result<Mat2> {
        let f = |x: i128, y: i128, z: i128, w: i128| -> Result<i128> {
            let p = x.checked_mul(y).ok_or(ThetaError::Overflow("matrix product"))?;
            let q = z.checked_mul(w).ok_or(ThetaError::Overflow("matrix product"))?;
            p.checked_add(q).ok_or(ThetaError::Overflow("matrix product"))
        };
        Ok(Mat2::new(
            f(self.a, o.a, self.b, o.c)?,
            f(self.a, o.b, self.b, o.d)?,
            f(self.c, o.a, self.d, o.c)?,
            f(self.c, o.b, self.d, o.d)?,
        ))
    }

    pub fn to_i64(&self) -> Result<IntMatrix2> {
        let g = |x: i128| i64::try_from(x).map_err(|_| ThetaError::Overflow("matrix entry exceeds i64"));
        Ok(IntMatrix2::new(g(self.a)?, g(self.b)?, g(self.c)?, g(self.d)?))
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `M = gamma * [[A, B], [0, D]]` with `gamma` in `SL2(Z)`, `A, D > 0`, `0 <= B < D`.
pub fn hermite(m: &Mat2) -> Result<(Mat2, i128, i128, i128)> {
    let det = m.det()?;
    if det <= 0 {
        return Err(ThetaError::InvalidArgument("matrix must have positive determinant".into()));
    }
    let (g, x, y) = ext_gcd(m.a, m.c);
    let (p, q) = (m.a / g, m.c / g);
    // gamma0 = [[p, -y], [q, x]] has det p x + q y = 1
    let gamma0 = Mat2::new(p, -y, q, x);
    let inv = Mat2::new(x, y, -q, p);
    let upper = inv.mul(m)?;
    debug_assert_eq!(upper.c, 0);
    let (a_, b_, d_) = (upper.a, upper.b, upper.d);
    let j = b_.div_euclid(d_);
    let b = b_.rem_euclid(d_);
    let gamma = gamma0.mul(&Mat2::new(1, j, 0, 1))?;
    Ok((gamma, a_, b, d_))
}

/// Move `tau` into the standard fundamental domain; returns `(tau2, delta)`
/// with `tau2 = delta * tau`.
pub fn reduce_to_fundamental(tau: Complex64) -> Result<(Complex64, Mat2)> {
    if !(tau.im > 0.0) || !tau.re.is_finite() {
        return Err(ThetaError::DomainError(format!("{} is not in the upper half plane", tau)));
    }
    let mut t = tau;
    let mut delta = Mat2::new(1, 0, 0, 1);
    for _ in 0..100_000 {
        let n = t.re.round();
        if n != 0.0 {
            if n.abs() > 1e30 {
                return Err(ThetaError::Overflow("fundamental domain reduction"));
            }
            t -= n;
            delta = Mat2::new(1, -(n as i128), 0, 1).mul(&delta)?;
        }
        if t.norm_sqr() < 1.0 - 1e-13 {
            t = -1.0 / t;
            delta = Mat2::new(0, -1, 1, 0).mul(&delta)?;
        } else {
            return Ok((t, delta));
        }
    }
    Err(ThetaError::NonConvergence(100_000))
}

/// Shared data for evaluating many theta constants at one point `M * base`.
#[derive(Debug, Clone)]
pub struct PreparedPoint {
    steps: Vec<i128>,
    k_final: i128,
    sqrt_product: Complex64,
    tau0: Complex64,
}

impl PreparedPoint {
    pub fn new(m: &IntMatrix2, base: Complex64) -> Result<Self> {
        PreparedPoint::from_wide(&Mat2::from(*m), base)
    }

    pub fn from_wide(m: &Mat2, base: Complex64) -> Result<Self> {
        if !(base.im > 0.0) {
            return Err(ThetaError::DomainError(format!("{} is not in the upper half plane", base)));
        }
        let (gamma, a, b, d) = hermite(m)?;
        let tau1 = (base * a as f64 + b as f64) / d as f64;
        let (tau0, delta) = reduce_to_fundamental(tau1)?;
        let dinv = Mat2::new(delta.d, -delta.b, -delta.c, delta.a);
        let mut g = gamma.mul(&dinv)?;
        let mut steps = Vec::new();
        while g.c != 0 {
            let k = round_div(g.a, g.c);
            let a1 = g.a - k * g.c;
            let b1 = g.b.checked_sub(k.checked_mul(g.d).ok_or(ThetaError::Overflow("peeling"))?)
                .ok_or(ThetaError::Overflow("peeling"))?;
            steps.push(k);
            g = Mat2::new(g.c, g.d, -a1, -b1);
        }
        let k_final = g.b * g.d;
        // u_i = g_i tau0, computed from the innermost factor outward
        let mut u = tau0 + k_final as f64;
        let mut sqrt_product = Complex64::new(1.0, 0.0);
        for &k in steps.iter().rev() {
            sqrt_product *= (Complex64::new(0.0, -1.0) * u).sqrt();
            u = -1.0 / u + k as f64;
        }
        Ok(PreparedPoint {
            steps,
            k_final,
            sqrt_product,
            tau0,
        })
    }

    /// Product of the square-root automorphy factors; common to all characteristics.
    pub fn scale(&self) -> f64 {
        self.sqrt_product.norm()
    }

    /// Point in the fundamental domain at which the series is summed.
    pub fn tau0(&self) -> Complex64 {
        self.tau0
    }

    /// Characteristic and phase (mod 2, factor `exp(pi i phase)`) at `tau0`.
    pub fn transport(&self, ch: &RationalChar) -> (RationalChar, Q) {
        let (mut r, mut s) = (ch.r, ch.s);
        let mut phase = Q::zero();
        for &k in self.steps.iter() {
            apply_translation(&mut r, &mut s, &mut phase, k);
            phase += Q::from_integer(2) * r * s;
            let (nr, ns) = (s, -r);
            r = nr;
            s = ns;
            normalize(&mut r, &mut s, &mut phase);
        }
        apply_translation(&mut r, &mut s, &mut phase, self.k_final);
        normalize(&mut r, &mut s, &mut phase);
        (RationalChar::new(r, s), mod2(&phase))
    }

    /// `theta_{r,s}(0, M * base)`.
    pub fn theta(&self, ch: &RationalChar, ctl: &SeriesControl) -> Result<Complex64> {
        let (c0, phase) = self.transport(ch);
        let v = theta_series(&c0.r, &c0.s, Complex64::new(0.0, 0.0), self.tau0, ctl)?;
        Ok(v * self.sqrt_product * phase_factor(&phase))
    }
}

/// `exp(pi i phase)`.
pub fn phase_factor(phase: &Q) -> Complex64 {
    let (n, d) = (*phase.numer(), *phase.denom());
    let t = PI * (n.rem_euclid(2 * d) as f64) / d as f64;
    Complex64::new(t.cos(), t.sin())
}

fn mod2(q: &Q) -> Q {
    let two_d = 2 * *q.denom();
    Q::new(q.numer().rem_euclid(two_d), *q.denom())
}

fn round_div(a: i128, c: i128) -> i128 {
    let (a, c) = if c < 0 { (-a, -c) } else { (a, c) };
    (2 * a + c).div_euclid(2 * c)
}

fn apply_translation(r: &mut Q, s: &mut Q, phase: &mut Q, k: i128) {
    if k == 0 {
        return;
    }
    // T^{2 q^2} acts trivially on theta_{r,s} when r = p/q
    let q = *r.denom() as i128;
    let k = k.rem_euclid(2 * q * q) as i64;
    let kq = Q::from_integer(k);
    *phase -= kq * *r * (*r + Q::from_integer(1));
    *s += kq * (*r + Q::new(1, 2));
    let p = mod2(phase);
    *phase = p;
}

fn normalize(r: &mut Q, s: &mut Q, phase: &mut Q) {
    let (r0, _) = frac_floor(r);
    let (s0, n) = frac_floor(s);
    *phase += Q::from_integer(2 * n) * r0;
    *phase = mod2(phase);
    *r = r0;
    *s = s0;
}

/// `theta_{r,s}(0, M * base)` for a single characteristic.
pub fn theta_at(ch: &RationalChar, m: &IntMatrix2, base: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    PreparedPoint::new(m, base)?.theta(ch, ctl)
}
