use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `(p + q sqrt(D)) / r` with `D` squarefree, `r > 0` and `gcd(p, q, r) = 1`.
///
/// `q = 0` encodes a rational number; `D` is still carried so that arithmetic
/// with irrational values of the same field stays closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub d: BigInt,
}

/// Largest `s` with `s * s` dividing `n`, and `n / s^2`.
///
/// Trial division up to the cube root leaves a cofactor with at most two prime
/// factors, which is a square exactly when it is a perfect square.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    if let Some(m) = n.to_u128() {
        let (s, d) = split_square_u128(m);
        return (s.into(), d.into());
    }
    let mut rest = n.clone();
    let mut sq = BigInt::one();
    let mut free = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f * &f <= rest {
        let f2 = &f * &f;
        while (&rest % &f2).is_zero() {
            rest /= &f2;
            sq *= &f;
        }
        if (&rest % &f).is_zero() {
            rest /= &f;
            free *= &f;
        }
        f += 1;
    }
    let r = rest.sqrt();
    if &r * &r == rest && rest > BigInt::one() {
        (sq * r, free)
    } else {
        (sq, free * rest)
    }
}

fn split_square_u128(mut rest: u128) -> (u128, u128) {
    let mut sq = 1u128;
    let mut free = 1u128;
    let mut f = 2u128;
    while f * f * f <= rest {
        while rest % (f * f) == 0 {
            rest /= f * f;
            sq *= f;
        }
        if rest % f == 0 {
            rest /= f;
            free *= f;
        }
        f += 1;
    }
    let r = Roots::sqrt(&rest);
    if r * r == rest && rest > 1 {
        (sq * r, free)
    } else {
        (sq, free * rest)
    }
}

impl QuadraticSurd {
    /// Builds `(p + q sqrt(d)) / r`, extracting square factors from `d`.
    pub fn new(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        assert!(d.is_positive(), "radicand must be positive");
        let (sq, d) = split_square(&d);
        let (p, q, d) = if d.is_one() { (p + q * sq, BigInt::zero(), BigInt::one()) } else { (p, q * sq, d) };
        let mut s = QuadraticSurd { p, q, r, d };
        s.reduce();
        s
    }

    pub fn from_i64(p: i64, q: i64, r: i64, d: i64) -> Self {
        QuadraticSurd::new(p.into(), q.into(), r.into(), d.into())
    }

    pub fn rational(n: BigInt, r: BigInt, d: &BigInt) -> Self {
        let mut s = QuadraticSurd {
            p: n,
            q: BigInt::zero(),
            r,
            d: d.clone(),
        };
        s.reduce();
        s
    }

    pub fn integer(n: i64, d: &BigInt) -> Self {
        QuadraticSurd::rational(n.into(), BigInt::one(), d)
    }

    fn reduce(&mut self) {
        if self.r.is_negative() {
            self.p = -&self.p;
            self.q = -&self.q;
            self.r = -&self.r;
        }
        let g = self.p.gcd(&self.q).gcd(&self.r);
        if !g.is_zero() && !g.is_one() {
            self.p /= &g;
            self.q /= &g;
            self.r /= &g;
        }
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    fn same_field(&self, o: &Self) -> BigInt {
        if self.is_rational() {
            o.d.clone()
        } else {
            if !o.is_rational() {
                assert_eq!(self.d, o.d, "surds from different fields");
            }
            self.d.clone()
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.same_field(o);
        let mut s = QuadraticSurd {
            p: &self.p * &o.r + &o.p * &self.r,
            q: &self.q * &o.r + &o.q * &self.r,
            r: &self.r * &o.r,
            d,
        };
        s.reduce();
        s
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            p: -&self.p,
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.same_field(o);
        let mut s = QuadraticSurd {
            p: &self.p * &o.p + &self.q * &o.q * &d,
            q: &self.p * &o.q + &self.q * &o.p,
            r: &self.r * &o.r,
            d,
        };
        s.reduce();
        s
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `(p^2 - q^2 D) / r^2` as a reduced fraction `(num, den)`.
    pub fn norm(&self) -> (BigInt, BigInt) {
        let n = &self.p * &self.p - &self.q * &self.q * &self.d;
        let den = &self.r * &self.r;
        let g = n.gcd(&den);
        if g.is_zero() {
            (n, den)
        } else {
            (n / &g, den / g)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/x = r (p - q sqrt D) / (p^2 - q^2 D)
        let n = &self.p * &self.p - &self.q * &self.q * &self.d;
        let mut s = QuadraticSurd {
            p: &self.r * &self.p,
            q: -(&self.r * &self.q),
            r: n,
            d: self.d.clone(),
        };
        s.reduce();
        Some(s)
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.recip().map(|x| self.mul(&x))
    }

    /// `floor(q sqrt D)` computed exactly.
    fn floor_irrational_part(&self) -> BigInt {
        let q2d = &self.q * &self.q * &self.d;
        let s = q2d.sqrt();
        if self.q.is_negative() {
            if &s * &s == q2d {
                -s
            } else {
                -s - 1
            }
        } else {
            s
        }
    }

    /// Exact floor of the value.
    pub fn floor(&self) -> BigInt {
        let t = self.floor_irrational_part();
        (&self.p + t).div_floor(&self.r)
    }

    pub fn signum(&self) -> i32 {
        let (sp, sq) = (sign_i32(&self.p), sign_i32(&self.q));
        if sq == 0 || sp == sq {
            return if sp == 0 { sq } else { sp };
        }
        if sp == 0 {
            return sq;
        }
        if &self.p * &self.p > &self.q * &self.q * &self.d {
            sp
        } else {
            sq
        }
    }

    pub fn cmp_value(&self, o: &Self) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }

    /// Nearest double, avoiding cancellation between the two parts.
    pub fn to_f64(&self) -> f64 {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        let root = f(&self.d).sqrt();
        let same_sign = self.p.sign() == self.q.sign() || self.p.is_zero() || self.q.is_zero();
        if same_sign {
            (f(&self.p) + f(&self.q) * root) / f(&self.r)
        } else {
            let (n, den) = self.norm();
            // x = N(x) / conj(x)
            let conj = (f(&self.p) - f(&self.q) * root) / f(&self.r);
            f(&n) / f(&den) / conj
        }
    }

    /// Applies `x -> (a x + b) / (c x + d)`; `None` at the pole.
    pub fn mobius(&self, a: i64, b: i64, c: i64, d: i64) -> Option<Self> {
        let dd = self.d.clone();
        let num = self.mul(&QuadraticSurd::integer(a, &dd)).add(&QuadraticSurd::integer(b, &dd));
        let den = self.mul(&QuadraticSurd::integer(c, &dd)).add(&QuadraticSurd::integer(d, &dd));
        num.div(&den)
    }
}

fn sign_i32(x: &BigInt) -> i32 {
    match x.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            }
        } else {
            write!(f, "({} + {}*sqrt({}))/{}", self.p, self.q, self.d, self.r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_signs_and_squares() {
        let s = QuadraticSurd::from_i64(6, -2, -12, 12);
        // (6 - 4 sqrt 3)/(-12) = (-3 + 2 sqrt 3)/6
        assert_eq!(s, QuadraticSurd::from_i64(-3, 2, 6, 3));
    }

    #[test]
    fn floors() {
        let t = QuadraticSurd::from_i64(3, -1, 6, 3);
        assert_eq!(t.floor(), BigInt::zero());
        assert_eq!(QuadraticSurd::from_i64(0, 1, 1, 2).floor(), BigInt::one());
        assert_eq!(QuadraticSurd::from_i64(0, -1, 1, 2).floor(), BigInt::from(-2));
        assert_eq!(QuadraticSurd::from_i64(-7, 0, 2, 2).floor(), BigInt::from(-4));
    }

    #[test]
    fn field_operations() {
        let x = QuadraticSurd::from_i64(1, 1, 1, 2);
        let y = x.recip().unwrap();
        assert_eq!(y, QuadraticSurd::from_i64(-1, 1, 1, 2));
        assert!(x.mul(&y).sub(&QuadraticSurd::integer(1, &BigInt::from(2))).is_zero());
        assert_eq!(x.signum(), 1);
        assert_eq!(y.neg().signum(), -1);
        assert!((QuadraticSurd::from_i64(2, -1, 1, 3).to_f64() - (2.0 - 3f64.sqrt())).abs() < 1e-15);
    }
}
