use crate::poly::FreePoly;
use crate::word::Word;
use presentation::Presentation;

/// The relations of a presentation as polynomials on the words `[left, right]`.
pub fn from_presentation(p: &Presentation) -> Vec<FreePoly> {
    p.relations
        .iter()
        .map(|r| FreePoly::from_terms(r.terms.iter().map(|t| (Word(vec![t.left_index, t.right_index]), t.coeff))))
        .collect()
}
