use presentation::*;
use proptest::prelude::*;
use rm_core::{validate, IntMatrix2};
use theta_engine::{SeriesControl, UpperHalfPoint};

/// Power series of `num / den` by long division.
fn series_division(num: &[i128], den: &[i128], n: usize) -> Vec<i128> {
    let mut out = Vec::new();
    let mut rem: Vec<i128> = (0..=n).map(|i| num.get(i).copied().unwrap_or(0)).collect();
    for i in 0..=n {
        let q = rem[i] / den[0];
        out.push(q);
        for (k, d) in den.iter().enumerate() {
            if i + k <= n {
                rem[i + k] -= q * d;
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_matches_series_division(t in 3u128..9, extra in 2u128..10, n in 2usize..12) {
        let c = t + extra;
        let h = hilbert_from_invariants(c, t, n).unwrap().coefficients;
        let num = [1i128, (c - t) as i128, 1];
        let den = [1i128, -(t as i128), 1];
        let oracle = series_division(&num, &den, n);
        prop_assert_eq!(h.iter().map(|&x| x as i128).collect::<Vec<_>>(), oracle);
        prop_assert!(h.iter().all(|&x| x > 0));
        prop_assert_eq!(h[1], c);
        prop_assert_eq!(h[2], c * t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn normalizations_span_the_same_kernels(re in -0.5f64..0.5, im in 0.6f64..2.0, which in 0usize..2) {
        let g = [IntMatrix2::new(5, -1, 6, -1), IntMatrix2::new(4, -1, 5, -1)][which];
        let rm = validate(&g).unwrap();
        let ctl = SeriesControl::default();
        let tau = UpperHalfPoint::from_parts(re, im).unwrap();
        let raw = relations(&rm, &tau, &ctl).unwrap();
        let rat = normalize_rational(&raw, &ctl).unwrap();
        let monic = monic_ordered(&raw).unwrap();
        let mut variants = vec![rat, monic];
        if rm.l % 2 == 0 {
            variants.push(normalize_modular(&raw, &ctl).unwrap());
        }
        for mu in 1..=rm.c() {
            for p in &variants {
                prop_assert!(subspace_distance(&raw.block_vectors(mu), &p.block_vectors(mu)) < 1e-8);
            }
        }
        prop_assert!(raw.tensor_residual(&ctl).unwrap() < 1e-9);
        let mut seen = std::collections::HashSet::new();
        for r in &raw.relations {
            for m in Presentation::monomials(r) {
                seen.insert((m, r.mu));
            }
        }
        let monos: std::collections::HashSet<_> = seen.iter().map(|(m, _)| *m).collect();
        let per_mu: usize = (1..=rm.c()).map(|mu| seen.iter().filter(|(_, m)| *m == mu).count()).sum();
        prop_assert_eq!(monos.len(), per_mu);
    }
}
