use crate::present::{Normalization, Presentation};
use serde::Serialize;

#[derive(Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
struct TermJson {
    left: usize,
    right: usize,
    coeff: ComplexJson,
}

#[derive(Serialize)]
struct RelationJson {
    mu: i64,
    k: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize)]
struct PresentationJson {
    g: [i64; 4],
    tau: ComplexJson,
    normalization: Normalization,
    l: i64,
    w: i64,
    relations: Vec<RelationJson>,
}

/// JSON value with relations ordered by `mu`, `k` and terms by column.
pub fn presentation_json(p: &Presentation) -> serde_json::Value {
    let g = p.rm.g;
    let relations = p
        .relations
        .iter()
        .map(|r| {
            let mut terms: Vec<_> = r.terms.iter().map(|t| (p.column_of(t), t)).collect();
            terms.sort_by_key(|(j, _)| *j);
            RelationJson {
                mu: r.mu,
                k: r.k,
                terms: terms
                    .into_iter()
                    .map(|(_, t)| TermJson {
                        left: t.left_index,
                        right: t.right_index,
                        coeff: ComplexJson {
                            re: t.coeff.re,
                            im: t.coeff.im,
                        },
                    })
                    .collect(),
            }
        })
        .collect();
    let out = PresentationJson {
        g: [g.a, g.b, g.c, g.d],
        tau: ComplexJson {
            re: p.tau.re(),
            im: p.tau.im(),
        },
        normalization: p.normalization,
        l: p.rm.l,
        w: p.rm.w,
        relations,
    };
    serde_json::to_value(out).expect("plain data serializes")
}
