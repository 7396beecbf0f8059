use crate::error::{Result, RmError};
use crate::surd::QuadraticSurd;
use num_bigint::BigInt;
use theta_engine::IntMatrix2;

/// A validated hyperbolic matrix with its real-multiplication invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct RMData {
    pub g: IntMatrix2,
    /// Attracting fixed point `(lambda+ - d)/c`.
    pub theta: QuadraticSurd,
    /// Repelling fixed point `(lambda- - d)/c`.
    pub theta_prime: QuadraticSurd,
    pub lambda_plus: QuadraticSurd,
    pub lambda_minus: QuadraticSurd,
    /// `c (a + d)`.
    pub l: i64,
    /// `floor((a + d + 1)/2)`.
    pub w: i64,
}

impl RMData {
    pub fn a(&self) -> i64 {
        self.g.a
    }
    pub fn b(&self) -> i64 {
        self.g.b
    }
    pub fn c(&self) -> i64 {
        self.g.c
    }
    pub fn d(&self) -> i64 {
        self.g.d
    }

    /// `a + d`.
    pub fn trace(&self) -> i64 {
        self.g.a + self.g.d
    }

    /// Number of generators.
    pub fn n_gen(&self) -> usize {
        self.g.c as usize
    }

    /// Rank `a + d` of every block.
    pub fn rank(&self) -> usize {
        self.trace() as usize
    }

    /// Relations per block, `c - a - d`.
    pub fn relations_per_block(&self) -> usize {
        self.n_gen() - self.rank()
    }
}

/// Checks the hyperbolicity and degree conditions and derives the invariants.
pub fn validate(g: &IntMatrix2) -> Result<RMData> {
    let det = g.det();
    if det != 1 {
        return Err(RmError::NotSL2(det));
    }
    let t = g.trace();
    if t <= 2 {
        return Err(RmError::NotHyperbolic(t));
    }
    if (g.c as i128) < t + 2 {
        return Err(RmError::DegreeTooSmall { c: g.c, need: t + 2 });
    }
    let t = t as i64;
    let disc = BigInt::from(t * t - 4);
    let lambda_plus = QuadraticSurd::new(t.into(), BigInt::from(-1), 2.into(), disc.clone());
    let lambda_minus = QuadraticSurd::new(t.into(), 1.into(), 2.into(), disc);
    let field = lambda_plus.d.clone();
    let shift = QuadraticSurd::integer(g.d, &field);
    let cq = QuadraticSurd::integer(g.c, &field);
    let theta = lambda_plus.sub(&shift).div(&cq).expect("c > 0");
    let theta_prime = lambda_minus.sub(&shift).div(&cq).expect("c > 0");
    Ok(RMData {
        g: *g,
        theta,
        theta_prime,
        lambda_plus,
        lambda_minus,
        l: g.c * t,
        w: (t + 1) / 2,
    })
}

/// `[[t+1, -1], [t+2, -1]]`, a matrix of trace `t` meeting both conditions.
pub fn canonical_g(t: i64) -> Result<IntMatrix2> {
    if t <= 2 {
        return Err(RmError::NotHyperbolic(t as i128));
    }
    Ok(IntMatrix2::new(t + 1, -1, t + 2, -1))
}

impl RMData {
    /// `g theta = theta` in exact arithmetic.
    pub fn fixes_theta(&self) -> bool {
        let g = &self.g;
        self.theta.mobius(g.a, g.b, g.c, g.d).as_ref() == Some(&self.theta)
            && self.theta_prime.mobius(g.a, g.b, g.c, g.d).as_ref() == Some(&self.theta_prime)
    }
}
