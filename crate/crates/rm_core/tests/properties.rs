use proptest::prelude::*;
use rm_core::*;
use theta_engine::{SeriesControl, UpperHalfPoint};

fn valid_matrices() -> Vec<IntMatrix2> {
    let mut out = Vec::new();
    for t in 3..=6i64 {
        for c in (t + 2)..=12 {
            for d in -30..=30 {
                let a = t - d;
                if (a * d - 1) % c == 0 {
                    out.push(IntMatrix2::new(a, (a * d - 1) / c, c, d));
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn nonvanishing_pattern(idx in 0usize..10_000, picks in proptest::collection::vec((1i64..=12, 1i64..=12, 1i64..=72), 12)) {
        let all = valid_matrices();
        let g = all[idx % all.len()];
        let rm = validate(&g).unwrap();
        prop_assert!(rm.fixes_theta());
        let tau = UpperHalfPoint::from_parts(0.1, 1.3).unwrap();
        let ctl = SeriesControl::default();
        for (a, b, gm) in picks {
            let a = (a - 1) % rm.c() + 1;
            let b = (b - 1) % rm.c() + 1;
            let gm = (gm - 1) % rm.l + 1;
            let v = structure_constant_theta(&rm, a, b, gm, &tau, &ctl).unwrap();
            let expect = (a - rm.d() * (gm - b)).rem_euclid(rm.c()) == 0;
            prop_assert_eq!(v.norm() > 0.0, expect);
            // the forced nonzero choice of alpha
            let a2 = rep(rm.d() * (gm - b), rm.c());
            prop_assert!(structure_constant_theta(&rm, a2, b, gm, &tau, &ctl).unwrap().norm() > 0.0);
        }
    }

    #[test]
    fn alpha_is_a_bijection(idx in 0usize..10_000, mu in 1i64..=12) {
        let all = valid_matrices();
        let rm = validate(&all[idx % all.len()]).unwrap();
        let mu = (mu - 1) % rm.c() + 1;
        let mut v: Vec<i64> = (1..=rm.c()).map(|b| alpha(&rm, mu, b).unwrap()).collect();
        v.sort();
        prop_assert_eq!(v, (1..=rm.c()).collect::<Vec<_>>());
    }

    #[test]
    fn surd_round_trip(p in -50i64..50, q in 1i64..20, r in 1i64..30, d in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13])) {
        let x = QuadraticSurd::from_i64(p, q, r, d);
        let y = x.recip().unwrap();
        prop_assert!(x.mul(&y).sub(&QuadraticSurd::integer(1, &x.d)).is_zero());
        let f = x.floor();
        let xf = x.to_f64();
        prop_assert_eq!(f, num_bigint::BigInt::from(xf.floor() as i64));
    }
}
