use crate::word::Word;
use num_complex::Complex64;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// A noncommutative polynomial; terms are kept in deglex order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FreePoly {
    pub terms: BTreeMap<Word, Complex64>,
}

impl FreePoly {
    pub fn zero() -> Self {
        FreePoly::default()
    }

    pub fn monomial(w: Word, coeff: Complex64) -> Self {
        let mut p = FreePoly::zero();
        p.add_term(w, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Complex64)>) -> Self {
        let mut p = FreePoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, coeff: Complex64) {
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == Complex64::new(0.0, 0.0) {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if coeff != Complex64::new(0.0, 0.0) {
                    e.insert(coeff);
                }
            }
        }
    }

    /// `self += coeff * l * other * r`.
    pub fn add_scaled(&mut self, other: &FreePoly, coeff: Complex64, l: &Word, r: &Word) {
        for (w, c) in &other.terms {
            self.add_term(w.wrap(l, r), coeff * c);
        }
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        let mut p = self.clone();
        p.add_scaled(other, Complex64::new(-1.0, 0.0), &Word::empty(), &Word::empty());
        p
    }

    /// `l * self * r`.
    pub fn wrap(&self, l: &Word, r: &Word) -> FreePoly {
        let mut p = FreePoly::zero();
        p.add_scaled(self, Complex64::new(1.0, 0.0), l, r);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term and coefficient under deglex.
    pub fn leading(&self) -> Option<(&Word, &Complex64)> {
        self.terms.iter().next_back()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.leading().map(|(w, _)| w)
    }

    pub fn degree(&self) -> usize {
        self.leading().map_or(0, |(w, _)| w.degree())
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.norm()))
    }

    /// Divided by the leading coefficient; the leading coefficient is set to exactly 1.
    pub fn monic(&self) -> FreePoly {
        let Some((lw, lc)) = self.leading() else {
            return self.clone();
        };
        let (lw, inv) = (lw.clone(), Complex64::new(1.0, 0.0) / lc);
        let mut p = FreePoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * inv)).collect(),
        };
        p.terms.insert(lw, Complex64::new(1.0, 0.0));
        p
    }

    /// Drops coefficients of magnitude at most `abs`.
    pub fn prune(&mut self, abs: f64) {
        self.terms.retain(|_, c| c.norm() > abs);
    }

    /// Largest coefficient difference over the union of supports.
    pub fn distance(&self, other: &FreePoly) -> f64 {
        let d = self.sub(other);
        d.max_abs()
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(w, c)| format!("({:.6e}{:+.6e}i) {}", c.re, c.im, w)).collect();
        f.write_str(&parts.join(" + "))
    }
}
