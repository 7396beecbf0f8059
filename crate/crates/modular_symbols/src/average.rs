//! Averaged presentations: the coefficient forms paired with the limiting modular symbol.

use crate::error::{Result, SymbolError};
use crate::group::GroupSpec;
use crate::integrate::integrate_geodesic;
use crate::quad::QuadratureControl;
use crate::symbol::{limiting_symbol, SymbolChain};
use num_complex::Complex64;
use presentation::ModularCoefficients;
use rm_core::{alpha, RMData};
use serde::Serialize;
use theta_engine::{FormHandle, SeriesControl};

#[derive(Debug, Clone, PartialEq)]
pub struct AveragedRelation {
    pub mu: i64,
    pub k: usize,
    /// `nu-hat^{mu,k}_j` for `j = 1..c`, the coefficient of `x_{alpha(mu,j)} x_j`.
    pub coeffs: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AveragedPresentation {
    pub rm: RMData,
    pub group: GroupSpec,
    pub chain: SymbolChain,
    /// Ordered by `mu`, then `k`.
    pub relations: Vec<AveragedRelation>,
    /// Largest quadrature error relative to the largest coefficient.
    pub quadrature_error: f64,
    pub evaluations: usize,
}

/// `nu-hat^{mu,k}_j = scale * sum over segments of int v-hat^{mu,k}_j(tau) d tau`.
pub fn averaged_relations(
    rm: &RMData,
    spec: &GroupSpec,
    ctl: &SeriesControl,
    quad: &QuadratureControl,
) -> Result<AveragedPresentation> {
    if rm.l % 2 != 0 {
        return Err(SymbolError::OddLevel(rm.l));
    }
    if rm.w % 2 != 0 {
        return Err(SymbolError::OddWeight(rm.w));
    }
    let chain = limiting_symbol(&rm.theta, spec)?;
    let forms = ModularCoefficients::new(rm, ctl)?;
    averaged_with(rm, spec, &forms, chain, ctl, quad)
}

/// The same average for given coefficient forms and chain.
pub fn averaged_with(
    rm: &RMData,
    spec: &GroupSpec,
    forms: &ModularCoefficients,
    chain: SymbolChain,
    ctl: &SeriesControl,
    quad: &QuadratureControl,
) -> Result<AveragedPresentation> {
    let n = forms.len();
    let mut total = vec![Complex64::new(0.0, 0.0); n];
    let mut error = 0.0;
    let mut evaluations = 0;
    for seg in &chain.segments {
        let r = integrate_geodesic(forms, &seg.from, &seg.to, chain.weight_vectors.as_ref(), ctl, quad)?;
        for (t, v) in total.iter_mut().zip(&r.values) {
            *t += v;
        }
        error += r.error;
        evaluations += r.evaluations;
    }
    let zero = forms.structural_zero();
    for (t, &z) in total.iter_mut().zip(&zero) {
        *t = if z { Complex64::new(0.0, 0.0) } else { *t * chain.scale };
    }
    let size = total.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let c = rm.n_gen();
    let relations = total
        .chunks(c)
        .enumerate()
        .map(|(r, coeffs)| {
            let (mu, k, _) = forms.index(r * c);
            AveragedRelation {
                mu,
                k,
                coeffs: coeffs.to_vec(),
            }
        })
        .collect();
    Ok(AveragedPresentation {
        rm: rm.clone(),
        group: spec.clone(),
        quadrature_error: if size > 0.0 { error * chain.scale / size } else { 0.0 },
        chain,
        relations,
        evaluations,
    })
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
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
struct AveragedJson<'a> {
    g: [i64; 4],
    normalization: &'static str,
    l: i64,
    w: i64,
    group: &'a GroupSpec,
    segments: &'a [crate::symbol::Segment],
    scale: f64,
    quadrature_error: f64,
    relations: Vec<RelationJson>,
}

/// JSON in the layout of a presentation, terms ordered by column and exact zeros omitted.
pub fn averaged_json(p: &AveragedPresentation) -> Result<serde_json::Value> {
    let mut relations = Vec::with_capacity(p.relations.len());
    for r in &p.relations {
        let mut terms = Vec::new();
        for (j0, z) in r.coeffs.iter().enumerate() {
            if *z == Complex64::new(0.0, 0.0) {
                continue;
            }
            let j = j0 + 1;
            terms.push(TermJson {
                left: alpha(&p.rm, r.mu, j as i64)? as usize,
                right: j,
                coeff: ComplexJson { re: z.re, im: z.im },
            });
        }
        relations.push(RelationJson { mu: r.mu, k: r.k, terms });
    }
    let g = p.rm.g;
    let out = AveragedJson {
        g: [g.a, g.b, g.c, g.d],
        normalization: "averaged",
        l: p.rm.l,
        w: p.rm.w,
        group: &p.group,
        segments: &p.chain.segments,
        scale: p.chain.scale,
        quadrature_error: p.quadrature_error,
        relations,
    };
    serde_json::to_value(out).map_err(|e| SymbolError::InvalidArgument(e.to_string()))
}
