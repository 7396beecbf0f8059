//! Cusps, integer matrices of unbounded size and congruence subgroups.

use crate::error::{Result, SymbolError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use theta_engine::IntMatrix2;

/// `p/q` in lowest terms with `q >= 0`; `oo = 1/0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub p: BigInt,
    pub q: BigInt,
}

impl Cusp {
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(SymbolError::InvalidArgument("0/0 is not a cusp".into()));
        }
        if q.is_zero() {
            return Ok(Cusp::infinity());
        }
        let g = p.gcd(&q);
        let s = if q.is_negative() { -BigInt::one() } else { BigInt::one() };
        Ok(Cusp {
            p: &p / &g * &s,
            q: &q / &g * s,
        })
    }

    pub fn from_i64(p: i64, q: i64) -> Result<Self> {
        Cusp::new(p.into(), q.into())
    }

    pub fn infinity() -> Self {
        Cusp {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// Real value; `None` at infinity.
    pub fn to_f64(&self) -> Option<f64> {
        if self.is_infinity() {
            return None;
        }
        let (p, q) = (self.p.to_f64()?, self.q.to_f64()?);
        if p.is_finite() && q.is_finite() {
            return Some(p / q);
        }
        // both huge: shift to keep 60 bits of each
        let shift = self.q.bits().saturating_sub(60);
        let sp = (&self.p >> shift).to_f64()?;
        let sq = (&self.q >> shift).to_f64()?;
        Some(sp / sq)
    }

    /// A matrix of `SL2(Z)` sending `oo` to this cusp.
    pub fn to_infinity_matrix(&self) -> Result<IntMatrix2> {
        if self.is_infinity() {
            return Ok(IntMatrix2::identity());
        }
        let (p, q) = match (self.p.to_i64(), self.q.to_i64()) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(SymbolError::Overflow(format!("cusp {} does not fit in 64 bits", self))),
        };
        let e = p.extended_gcd(&q);
        let (x, y) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
        // p x + q y = 1, so [[p, -y], [q, x]] has determinant 1
        Ok(IntMatrix2::new(p, -y, q, x))
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl Serialize for Cusp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `[[a, b], [c, d]]` over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigMatrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl From<&IntMatrix2> for BigMatrix2 {
    fn from(m: &IntMatrix2) -> Self {
        BigMatrix2 {
            a: m.a.into(),
            b: m.b.into(),
            c: m.c.into(),
            d: m.d.into(),
        }
    }
}

impl BigMatrix2 {
    pub fn identity() -> Self {
        BigMatrix2 {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &BigMatrix2) -> BigMatrix2 {
        BigMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn pow(&self, mut n: u32) -> BigMatrix2 {
        let mut base = self.clone();
        let mut acc = BigMatrix2::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Inverse of a matrix of determinant 1.
    pub fn inverse_sl2(&self) -> BigMatrix2 {
        BigMatrix2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// Image of a cusp under the fractional linear action.
    pub fn act_cusp(&self, x: &Cusp) -> Result<Cusp> {
        Cusp::new(&self.a * &x.p + &self.b * &x.q, &self.c * &x.p + &self.d * &x.q)
    }

    pub fn to_int(&self) -> Option<IntMatrix2> {
        Some(IntMatrix2::new(self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?, self.d.to_i64()?))
    }
}

/// The congruence subgroups used for levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum GroupSpec {
    /// Principal congruence subgroup `Gamma(N)`.
    Gamma { n: u64 },
    /// `Gamma_{n,2n}`: `gamma = 1 mod n` and `ab = cd = 0 mod 2n`.
    GammaN2N { n: u64 },
    /// `Gamma^{[m]}_{n,2n}`: elements of `Gamma_{1,2}` whose conjugate
    /// `[[a, m b], [c/m, d]]` is integral and lies in `Gamma_{n,2n}`.
    Bracket { n: u64, m: u64 },
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Gamma { n } | GroupSpec::GammaN2N { n } if n == 0 => {
                Err(SymbolError::InvalidGroup("level must be positive".into()))
            }
            GroupSpec::Bracket { n, m } if n == 0 || m == 0 => Err(SymbolError::InvalidGroup("parameters must be positive".into())),
            GroupSpec::Bracket { m, .. } if m % 2 != 0 => Err(SymbolError::InvalidGroup(format!("m = {} must be even", m))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Gamma { n } => write!(f, "Gamma({})", n),
            GroupSpec::GammaN2N { n } => write!(f, "Gamma_{{{},{}}}", n, 2 * n),
            GroupSpec::Bracket { n, m } => write!(f, "Gamma^[{}]_{{{},{}}}", m, n, 2 * n),
        }
    }
}

fn divides(n: &BigInt, x: &BigInt) -> bool {
    (x % n).is_zero()
}

fn in_n_2n(g: &BigMatrix2, n: &BigInt) -> bool {
    let two_n = n * 2;
    divides(n, &(&g.a - 1)) && divides(n, &g.b) && divides(n, &g.c) && divides(n, &(&g.d - 1))
        && divides(&two_n, &(&g.a * &g.b))
        && divides(&two_n, &(&g.c * &g.d))
}

/// Exact membership of a determinant-one matrix.
pub fn member_big(g: &BigMatrix2, spec: &GroupSpec) -> Result<bool> {
    spec.validate()?;
    if !g.det().is_one() {
        return Ok(false);
    }
    Ok(match *spec {
        GroupSpec::Gamma { n } => {
            let n = BigInt::from(n);
            divides(&n, &(&g.a - 1)) && divides(&n, &g.b) && divides(&n, &g.c) && divides(&n, &(&g.d - 1))
        }
        GroupSpec::GammaN2N { n } => in_n_2n(g, &BigInt::from(n)),
        GroupSpec::Bracket { n, m } => {
            let m = BigInt::from(m);
            in_n_2n(g, &BigInt::one()) && divides(&m, &g.c) && {
                let conj = BigMatrix2 {
                    a: g.a.clone(),
                    b: &g.b * &m,
                    c: &g.c / &m,
                    d: g.d.clone(),
                };
                in_n_2n(&conj, &BigInt::from(n))
            }
        }
    })
}

pub fn member(g: &IntMatrix2, spec: &GroupSpec) -> Result<bool> {
    member_big(&BigMatrix2::from(g), spec)
}
