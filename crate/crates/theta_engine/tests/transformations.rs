use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_engine::*;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn pt(re: f64, im: f64) -> UpperHalfPoint {
    UpperHalfPoint::from_parts(re, im).unwrap()
}

fn random_gamma_1_2(rng: &mut ChaCha8Rng, bound: i64) -> IntMatrix2 {
    loop {
        let n = rng.gen_range(2..=5);
        let ks: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let g = gamma_1_2_word(&ks).unwrap();
        let big = [g.a, g.b, g.c, g.d].iter().any(|x| x.abs() > bound);
        if !big && g.c != 0 {
            return g;
        }
    }
}

#[test]
fn kappa_of_identity_and_translation() {
    for tau in [pt(0.0, 1.0), pt(0.3, 0.8)] {
        let k = kappa(&IntMatrix2::identity(), &tau, &ctl()).unwrap();
        assert!((k - 1.0).norm() < 1e-14);
        let k = kappa(&IntMatrix2::new(1, 2, 0, 1), &tau, &ctl()).unwrap();
        assert!((k - 1.0).norm() < 1e-13);
    }
}

#[test]
fn kappa_of_inversion_is_probe_independent() {
    let s = IntMatrix2::new(0, -1, 1, 0);
    let ks: Vec<Complex64> = [pt(0.0, 1.0), pt(1.0, 1.0), pt(0.0, 1.5)]
        .iter()
        .map(|t| kappa(&s, t, &ctl()).unwrap())
        .collect();
    for k in &ks {
        assert!((k.powi(8) - 1.0).norm() < 1e-9);
        assert!((k - ks[0]).norm() < 1e-9);
    }
}

#[test]
fn kappa_rejects_outside_theta_group() {
    let e = kappa(&IntMatrix2::new(1, 1, 0, 1), &pt(0.0, 1.0), &ctl()).unwrap_err();
    assert_eq!(e.name(), "InvalidArgument");
}

#[test]
fn kappa_reports_degenerate_probe() {
    // theta(0, tau) vanishes at tau = 1
    let probe = pt(1.0, 1e-3);
    let e = kappa(&IntMatrix2::new(0, -1, 1, 0), &probe, &ctl()).unwrap_err();
    assert_eq!(e.name(), "DegenerateProbe");
}

#[test]
fn functional_equation_on_random_theta_group_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let g = random_gamma_1_2(&mut rng, 10);
        let tau = pt(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.5));
        let z = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.2..0.2));
        let chk = functional_equation_check(&g, z, &tau, &ctl()).unwrap();
        assert!(chk.kappa8_error < 1e-9, "{}: {:?}", g, chk);
        assert!(chk.residual < 1e-9, "{}: {:?}", g, chk);
    }
}

#[test]
fn jacobi_quartic_identity() {
    for tau in [pt(0.0, 1.0), pt(0.0, 2.0), pt(1.0 / 3.0, 1.0)] {
        assert!(jacobi_residual(&tau, &ctl()).unwrap() < 1e-10);
    }
}

#[test]
fn zeros_of_the_null_characteristic() {
    let c = ctl();
    let chk = theta_zero_check(&RationalChar::zero(), 0, 0, &pt(0.0, 1.0), &c).unwrap();
    assert!(chk.passes(1e-10), "{:?}", chk);
    for (p, q) in [(-2, 1), (0, -1), (2, 2)] {
        let chk = theta_zero_check(&RationalChar::zero(), p, q, &pt(0.0, 2.0), &c).unwrap();
        assert!(chk.passes(1e-10), "{:?}", chk);
    }
    let generic = theta(&RationalChar::zero(), chk.z0 + 0.3, &pt(0.0, 2.0), &c).unwrap();
    assert!(generic.norm() > 1e-3);
}

#[test]
fn zeros_of_rational_characteristics() {
    let c = ctl();
    let tau = pt(0.25, 1.1);
    for ch in [RationalChar::from_ints(1, 3, 1, 5), RationalChar::from_ints(5, 24, -1, 2)] {
        for (p, q) in [(0, 0), (1, -1), (-1, 2)] {
            let chk = theta_zero_check(&ch, p, q, &tau, &c).unwrap();
            assert!(chk.passes(1e-10), "{:?} {:?}", ch, chk);
            assert!(chk.scale > 1e-3);
        }
        // (r + 1/2) tau + (s + 1/2) is not a zero unless r, s are half-integers
        let z = tau.value() * (ch.r_f64() + 0.5) + (ch.s_f64() + 0.5);
        assert!(theta(&ch, z, &tau, &c).unwrap().norm() > 1e-3);
    }
}

#[test]
fn engine_matches_direct_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = ctl();
    let mut checked = 0;
    while checked < 60 {
        let m = IntMatrix2::new(
            rng.gen_range(-30..=30),
            rng.gen_range(-30..=30),
            rng.gen_range(-6..=6),
            rng.gen_range(-6..=6),
        );
        if m.det() <= 0 {
            continue;
        }
        let w = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..2.0));
        let tau = m.act(w);
        if tau.im < 0.05 {
            continue;
        }
        let ch = RationalChar::from_ints(rng.gen_range(-30..30), 24, rng.gen_range(-12..12), 12);
        let a = theta_at(&ch, &m, w, &c).unwrap();
        let b = theta(&ch, Complex64::new(0.0, 0.0), &UpperHalfPoint::new(tau).unwrap(), &c).unwrap();
        let tol = 1e-10 * (1.0 + PreparedPoint::new(&m, w).unwrap().scale());
        assert!((a - b).norm() < tol, "{} at {}: {} vs {}", m, w, a, b);
        checked += 1;
    }
}

#[test]
fn engine_reaches_points_near_the_real_axis() {
    // eta(tau) = e^{-pi i/6} theta_{1/6,1/2}(3 tau) and eta(-1/tau) = sqrt(-i tau) eta(tau)
    let c = ctl();
    let eta = |tau: Complex64| {
        let f = ThetaProduct::new(vec![ThetaFactor::new(RationalChar::from_ints(1, 6, 1, 2), 3)]);
        f.value(tau, &c).unwrap() * Complex64::new(0.0, -std::f64::consts::PI / 6.0).exp()
    };
    let tau = Complex64::new(0.137, 2e-4);
    let lhs = eta(-1.0 / tau);
    let rhs = (Complex64::new(0.0, -1.0) * tau).sqrt() * eta(tau);
    assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(1e-300), "{} vs {}", lhs, rhs);
}
