use num_complex::Complex64;
use rm_core::*;
use theta_engine::{SeriesControl, UpperHalfPoint, Q};

fn superexample() -> RMData {
    validate(&IntMatrix2::new(5, -1, 6, -1)).unwrap()
}

fn first_example() -> RMData {
    validate(&IntMatrix2::new(4, -1, 5, -1)).unwrap()
}

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn pt(re: f64, im: f64) -> UpperHalfPoint {
    UpperHalfPoint::from_parts(re, im).unwrap()
}

#[test]
fn alpha_values() {
    let rm = superexample();
    for mu in 1..=6 {
        assert_eq!(alpha(&rm, mu, mu).unwrap(), 6);
        let mut seen: Vec<i64> = (1..=6).map(|b| alpha(&rm, mu, b).unwrap()).collect();
        seen.sort();
        assert_eq!(seen, vec![1, 2, 3, 4, 5, 6]);
    }
    assert_eq!(alpha(&rm, 1, 2).unwrap(), 1);
    assert_eq!(alpha(&rm, 0, 2).unwrap_err().name(), "IndexOutOfRange");
}

#[test]
fn empty_index_set_gives_exact_zero() {
    let rm = superexample();
    let g = rm.g;
    // alpha = 1, beta = 1, gamma = 1: d (gamma - beta) = 0 != 1 mod 6
    assert!(index_set(&g, &g, 1, 1, 1).unwrap().is_none());
    let v = structure_constant_series(&g, &g, 1, 1, 1, &pt(0.0, 2.0), &ctl()).unwrap();
    assert_eq!(v, Complex64::new(0.0, 0.0));
}

#[test]
fn series_and_theta_forms_agree() {
    for rm in [superexample(), first_example()] {
        let g = rm.g;
        for tau in [pt(0.0, 1.0), pt(0.0, 2.0), pt(0.25, 1.5)] {
            for a in 1..=rm.c() {
                for b in 1..=rm.c() {
                    for gm in 1..=rm.l {
                        let s = structure_constant_series(&g, &g, a, b, gm, &tau, &ctl()).unwrap();
                        let t = structure_constant_theta(&rm, a, b, gm, &tau, &ctl()).unwrap();
                        assert!((s - t).norm() <= 1e-12 * t.norm(), "{} {} {}: {} vs {}", a, b, gm, s, t);
                        assert_eq!(s.norm() == 0.0, t.norm() == 0.0);
                    }
                }
            }
        }
    }
}

#[test]
fn translation_by_two_is_a_termwise_phase() {
    let rm = superexample();
    let g = rm.g;
    let tau = pt(0.1, 0.9);
    let shifted = pt(2.1, 0.9);
    let k = (6 * 6 * 24) as f64;
    for (a, b, gm) in [(1, 2, 1), (3, 5, 10), (6, 6, 24)] {
        let Some((n0, step)) = index_set(&g, &g, a, b, gm).unwrap() else { continue };
        let mut direct = Complex64::new(0.0, 0.0);
        for j in -20i128..=20 {
            let m = (n0 + j * step) as f64;
            let term = (Complex64::i() * std::f64::consts::PI * tau.value() * m * m / k).exp();
            let phase = (Complex64::i() * std::f64::consts::PI * 2.0 * m * m / k).exp();
            direct += term * phase;
        }
        let v = structure_constant_series(&g, &g, a, b, gm, &shifted, &ctl()).unwrap();
        assert!((v - direct).norm() < 1e-12 * v.norm());
    }
}

#[test]
fn superexample_characteristic_formula() {
    let rm = superexample();
    let tau = pt(0.0, 2.0);
    for b in 1..=6 {
        for gm in 1..=24 {
            let a = rep(-(gm - b), 6);
            let ch = structure_char(&rm, a, b, gm).unwrap().unwrap();
            assert_eq!(theta_engine::frac_floor(&(ch - Q::new(4 * b - 5 * gm, 24))).0, Q::from_integer(0));
            let v = structure_constant_theta(&rm, a, b, gm, &tau, &ctl()).unwrap();
            assert!(v.norm() > 0.0);
            let w = theta_engine::theta_constant(&Q::new(4 * b - 5 * gm, 24), &pt(0.0, 48.0), &ctl()).unwrap();
            assert!((v - w).norm() < 1e-13 * w.norm());
        }
    }
}

#[test]
fn vanishing_pattern() {
    let rm = first_example();
    for a in 1..=5 {
        for b in 1..=5 {
            for gm in 1..=15 {
                let v = structure_constant_theta(&rm, a, b, gm, &pt(0.0, 2.0), &ctl()).unwrap();
                let expected_nonzero = (a - rm.d() * (gm - b)).rem_euclid(5) == 0;
                assert_eq!(v.norm() > 0.0, expected_nonzero);
            }
        }
    }
}

#[test]
fn q_mu_closed_forms() {
    let s = superexample();
    let f = first_example();
    for mu in 1..=6 {
        assert_eq!(q_mu(&s, mu).unwrap(), Q::new(6 - 5 * mu, 24));
        assert_eq!(24 % q_mu(&s, mu).unwrap().denom(), 0);
    }
    for mu in 1..=5 {
        assert_eq!(q_mu(&f, mu).unwrap(), Q::new(5 - 4 * mu, 15));
    }
}

#[test]
fn characteristic_tables() {
    assert_eq!(
        lambda_display(&first_example()),
        vec![vec![2, 14, 11, 8, 5], vec![7, 4, 1, 13, 10], vec![12, 9, 6, 3, 0]]
    );
    assert_eq!(
        lambda_display(&superexample()),
        vec![
            vec![2, 22, 18, 14, 10, 6],
            vec![8, 4, 0, 20, 16, 12],
            vec![14, 10, 6, 2, 22, 18],
            vec![20, 16, 12, 8, 4, 0]
        ]
    );
    for rm in [first_example(), superexample()] {
        for row in lambda_matrix(&rm) {
            for x in row {
                assert_eq!(rm.l % x.denom(), 0);
                assert!(x >= Q::from_integer(0) && x < Q::from_integer(1));
            }
        }
    }
}

#[test]
fn blocks_have_full_rank_and_match_structure_constants() {
    for (rm, tau) in [(superexample(), pt(0.0, 2.0)), (first_example(), pt(0.2, 2.0))] {
        for mu in 1..=rm.c() {
            let m = block_m(&rm, mu, &tau, &ctl()).unwrap();
            assert_eq!(m.shape(), (rm.rank(), rm.n_gen()));
            for i in 1..=rm.trace() {
                for j in 1..=rm.c() {
                    let gm = mu + (i - 1) * rm.c();
                    let c = structure_constant_theta(&rm, alpha(&rm, mu, j).unwrap(), j, gm, &tau, &ctl()).unwrap();
                    let e = m[((i - 1) as usize, (j - 1) as usize)];
                    assert!((c - e).norm() < 1e-12 * c.norm(), "mu {} ({}, {}): {} vs {}", mu, i, j, c, e);
                }
            }
        }
    }
}

#[test]
fn nonzero_constants_share_a_congruence_class() {
    let rm = superexample();
    let tau = pt(0.0, 2.0);
    for a in 1..=6 {
        for b in 1..=6 {
            let gms: Vec<i64> = (1..=24)
                .filter(|&gm| structure_constant_theta(&rm, a, b, gm, &tau, &ctl()).unwrap().norm() > 0.0)
                .collect();
            assert_eq!(gms.len(), 4);
            assert!(gms.iter().all(|g| (g - gms[0]).rem_euclid(6) == 0));
        }
    }
}
