use crate::error::{GroebnerError, Result};
use crate::macaulay::reduced_component;
use crate::poly::FreePoly;
use crate::word::Word;
use num_complex::Complex64;
use std::collections::HashMap;

/// Default relative size below which a normal form counts as zero in [`GroebnerState::insert`].
pub const ZERO_THRESHOLD: f64 = 1e-10;

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 4;

/// One reduction step `f -= coeff * left * system[index] * right`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStep {
    pub left: Word,
    pub index: usize,
    pub right: Word,
    pub coeff: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub poly: FreePoly,
    pub trace: Vec<ReductionStep>,
    /// Largest coefficient magnitude met during the reduction.
    pub max_coeff: f64,
}

/// Monic system sorted by leading term, complete up to `completed_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerState {
    pub n_vars: usize,
    pub system: Vec<FreePoly>,
    pub truncation_degree: usize,
    pub zero_threshold: f64,
    /// Degree up to which all overlaps have been processed.
    pub completed_degree: usize,
    /// Leading terms adjoined by completion, in the order they were found.
    pub adjoined: Vec<Word>,
    /// Largest coefficient magnitude in the system.
    pub max_intermediate: f64,
    /// Generators of the ideal.
    pub generators: Vec<FreePoly>,
    leads: HashMap<Word, usize>,
}

impl GroebnerState {
    pub fn new(n_vars: usize, truncation_degree: usize) -> Self {
        GroebnerState {
            n_vars,
            system: Vec::new(),
            truncation_degree,
            zero_threshold: ZERO_THRESHOLD,
            completed_degree: 0,
            adjoined: Vec::new(),
            max_intermediate: 0.0,
            generators: Vec::new(),
            leads: HashMap::new(),
        }
    }

    pub fn with_threshold(mut self, t: f64) -> Self {
        self.zero_threshold = t;
        self
    }

    pub fn leading_terms(&self) -> Vec<Word> {
        self.system.iter().filter_map(|p| p.leading_word().cloned()).collect()
    }

    pub fn adjoined_of_degree(&self, d: usize) -> Vec<Word> {
        let mut v: Vec<Word> = self.adjoined.iter().filter(|w| w.degree() == d).cloned().collect();
        v.sort();
        v
    }

    /// A system element whose leading word divides `w`, as `(index, left, right)`.
    pub fn divisor(&self, w: &Word) -> Option<(usize, Word, Word)> {
        let n = w.degree();
        for len in (1..=n).rev() {
            for start in 0..=n - len {
                if let Some(&i) = self.leads.get(&w.slice(start, start + len)) {
                    return Some((i, w.slice(0, start), w.slice(start + len, n)));
                }
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.divisor(w).is_some()
    }

    fn rebuild_index(&mut self) {
        self.system.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
        self.leads = self
            .system
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.leading_word().map(|w| (w.clone(), i)))
            .collect();
    }

    /// Reduces `f` and, if it is nonzero, adjoins its monic normal form; returns the new leading word.
    pub fn insert(&mut self, f: &FreePoly) -> Result<Option<Word>> {
        let nf = normal_form_traced(f, self)?;
        self.max_intermediate = self.max_intermediate.max(nf.max_coeff);
        if nf.poly.max_abs() <= self.zero_threshold * nf.max_coeff {
            return Ok(None);
        }
        let m = nf.poly.monic();
        let lw = m.leading_word().cloned().expect("nonzero");
        self.system.push(m);
        self.rebuild_index();
        Ok(Some(lw))
    }
}

fn check_degree(f: &FreePoly, st: &GroebnerState) -> Result<()> {
    let d = f.degree();
    if d > st.truncation_degree {
        return Err(GroebnerError::TruncationExceeded {
            degree: d,
            limit: st.truncation_degree,
        });
    }
    Ok(())
}

/// Full reduction choosing among the reducible terms with `pick`.
pub fn normal_form_with(f: &FreePoly, st: &GroebnerState, pick: &mut dyn FnMut(&[Word]) -> usize) -> Result<NormalForm> {
    check_degree(f, st)?;
    let mut h = f.clone();
    let mut max_coeff = h.max_abs();
    let mut trace = Vec::new();
    loop {
        let reducible: Vec<Word> = h.terms.keys().rev().filter(|w| st.is_reducible(w)).cloned().collect();
        if reducible.is_empty() {
            break;
        }
        let t = &reducible[pick(&reducible).min(reducible.len() - 1)];
        let coeff = h.terms[t];
        let (index, left, right) = st.divisor(t).expect("reducible");
        h.add_scaled(&st.system[index], -coeff, &left, &right);
        // the leading coefficient is 1, so the target term cancels exactly
        h.terms.remove(t);
        check_degree(&h, st)?;
        max_coeff = max_coeff.max(h.max_abs());
        h.prune(0.0);
        trace.push(ReductionStep { left, index, right, coeff });
    }
    Ok(NormalForm { poly: h, trace, max_coeff })
}

/// Normal form reducing the largest reducible term first, with its reduction trace.
pub fn normal_form_traced(f: &FreePoly, st: &GroebnerState) -> Result<NormalForm> {
    normal_form_with(f, st, &mut |_| 0)
}

/// Fully reduced normal form of `f`.
pub fn normal_form(f: &FreePoly, st: &GroebnerState) -> Result<FreePoly> {
    Ok(normal_form_traced(f, st)?.poly)
}

/// An overlap `u r = l v = w` between leading words of system elements `i` and `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub word: Word,
    pub i: usize,
    pub j: usize,
    pub shift: usize,
}

pub fn overlaps_of_degree(st: &GroebnerState, d: usize) -> Vec<Overlap> {
    let leads = st.leading_terms();
    let mut out = Vec::new();
    for (i, u) in leads.iter().enumerate() {
        for (j, v) in leads.iter().enumerate() {
            let (nu, nv) = (u.degree(), v.degree());
            for s in 1..nu.min(nv) {
                if nu + nv - s != d || u.0[nu - s..] != v.0[..s] {
                    continue;
                }
                out.push(Overlap {
                    word: u.concat(&v.slice(s, nv)),
                    i,
                    j,
                    shift: s,
                });
            }
        }
    }
    out.sort_by(|a, b| a.word.cmp(&b.word).then((a.i, a.j, a.shift).cmp(&(b.i, b.j, b.shift))));
    out
}

/// `g_i r - l g_j` for an overlap.
pub fn s_element(st: &GroebnerState, o: &Overlap) -> FreePoly {
    let (gi, gj) = (&st.system[o.i], &st.system[o.j]);
    let (u, v) = (gi.leading_word().expect("nonzero"), gj.leading_word().expect("nonzero"));
    let r = v.slice(o.shift, v.degree());
    let l = u.slice(0, u.degree() - o.shift);
    gi.wrap(&Word::empty(), &r).sub(&gj.wrap(&l, &Word::empty()))
}

/// Completes the system degree by degree up to `n`.
///
/// In each degree `d` the ideal component `I_d` is spanned by the products `u f v`
/// of the generators; its reduced echelon basis under deglex contains the normal
/// form of every S-element of degree `d`, and the elements whose leading words are
/// not multiples of earlier leading terms are adjoined in deglex order.
pub fn complete_to_degree(st: &GroebnerState, relations: &[FreePoly], n: usize) -> Result<GroebnerState> {
    if n > st.truncation_degree {
        return Err(GroebnerError::TruncationExceeded {
            degree: n,
            limit: st.truncation_degree,
        });
    }
    let mut st = st.clone();
    st.generators.extend(relations.iter().filter(|p| !p.is_zero()).cloned());
    let low = match st.generators.iter().map(|g| g.degree()).min() {
        Some(d) => d,
        None => return Ok(st),
    };
    let start = if st.completed_degree == 0 { low } else { st.completed_degree + 1 };
    for d in start..=n {
        for f in reduced_component(&st.generators, st.n_vars, d) {
            let w = f.leading_word().cloned().expect("monic");
            if st.is_reducible(&w) {
                continue;
            }
            st.max_intermediate = st.max_intermediate.max(f.max_abs());
            st.system.push(f);
            st.rebuild_index();
            if d > low {
                st.adjoined.push(w);
            }
        }
        st.completed_degree = d;
    }
    Ok(st)
}

/// Degree-`n` words containing no leading term of the system, in deglex order.
pub fn linear_basis(st: &GroebnerState, n: usize) -> Result<Vec<Word>> {
    if n > st.completed_degree.max(1) && !st.system.is_empty() {
        return Err(GroebnerError::TruncationExceeded {
            degree: n,
            limit: st.completed_degree,
        });
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    extend(st, n, &mut cur, &mut out);
    Ok(out)
}

fn extend(st: &GroebnerState, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Word>) {
    if cur.len() == n {
        out.push(Word(cur.clone()));
        return;
    }
    for x in 1..=st.n_vars {
        cur.push(x);
        // only suffixes can be new factors
        let bad = (0..cur.len()).any(|s| st.leads.contains_key(&Word(cur[s..].to_vec())));
        if !bad {
            extend(st, n, cur, out);
        }
        cur.pop();
    }
}

/// JSON array of index sequences.
pub fn basis_json(words: &[Word]) -> serde_json::Value {
    serde_json::Value::Array(words.iter().map(|w| serde_json::json!(w.0)).collect())
}
