use std::cmp::Ordering;
use std::fmt;

/// A monomial `x_{i_1} ... x_{i_n}` of the free semigroup, indices 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(indices: Vec<usize>) -> Self {
        Word(indices)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `l * self * r`.
    pub fn wrap(&self, l: &Word, r: &Word) -> Word {
        let mut v = Vec::with_capacity(l.degree() + self.degree() + r.degree());
        v.extend_from_slice(&l.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&r.0);
        Word(v)
    }

    /// Positions where `factor` occurs as a contiguous subword.
    pub fn occurrences(&self, factor: &Word) -> Vec<usize> {
        let (n, m) = (self.degree(), factor.degree());
        if m > n {
            return Vec::new();
        }
        (0..=n - m).filter(|&p| self.0[p..p + m] == factor.0[..]).collect()
    }

    pub fn contains(&self, factor: &Word) -> bool {
        !self.occurrences(factor).is_empty()
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }
}

/// Deglex: shorter words are smaller; equal lengths compare at the first
/// differing position, the smaller index being smaller.
pub fn deglex_compare(a: &Word, b: &Word) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex_compare(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for i in &self.0 {
            write!(f, "x{}", i)?;
        }
        Ok(())
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}
