use num_complex::Complex64;
use proptest::prelude::*;
use theta_engine::*;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn char_strategy() -> impl Strategy<Value = RationalChar> {
    (-40i64..40, 1i64..25, -40i64..40, 1i64..25).prop_map(|(a, b, c, d)| RationalChar::from_ints(a, b, c, d))
}

fn tau_strategy() -> impl Strategy<Value = UpperHalfPoint> {
    (-1.0f64..1.0, 0.4f64..2.0).prop_map(|(x, y)| UpperHalfPoint::from_parts(x, y).unwrap())
}

fn z_strategy() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -0.3f64..0.3).prop_map(|(x, y)| Complex64::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn r_shift_invariance(ch in char_strategy(), z in z_strategy(), tau in tau_strategy()) {
        let a = theta(&ch, z, &tau, &ctl()).unwrap();
        let b = theta(&RationalChar::new(ch.r + 1, ch.s), z, &tau, &ctl()).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(b.norm()) + 1e-300);
    }

    #[test]
    fn s_shift_phase(ch in char_strategy(), z in z_strategy(), tau in tau_strategy()) {
        let a = theta(&ch, z, &tau, &ctl()).unwrap();
        let b = theta(&RationalChar::new(ch.r, ch.s + 1), z, &tau, &ctl()).unwrap();
        let ph = phase_factor(&(ch.r * 2));
        prop_assert!((b - a * ph).norm() <= 1e-12 * a.norm().max(b.norm()) + 1e-300);
    }

    #[test]
    fn evenness(r in (-40i64..40, 1i64..25).prop_map(|(a, b)| Q::new(a, b)), tau in tau_strategy()) {
        let a = theta_constant(&r, &tau, &ctl()).unwrap();
        let b = theta_constant(&-r, &tau, &ctl()).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn automorphy(ch in char_strategy(), m in -2i64..=2, mp in -2i64..=2, z in z_strategy(), tau in tau_strategy()) {
        let res = automorphy_residual(&ch, m, mp, z, &tau, &ctl()).unwrap();
        prop_assert!(res < 1e-10, "residual {}", res);
    }

    #[test]
    fn canonical_representative_is_reduced(ch in char_strategy()) {
        let (c, _) = ch.canonical();
        prop_assert!(c.r >= Q::from_integer(0) && c.r < Q::from_integer(1));
        prop_assert!(c.s >= Q::from_integer(0) && c.s < Q::from_integer(1));
        prop_assert!(c.equivalent(&ch));
    }

    #[test]
    fn canonical_phase_is_exact(ch in char_strategy(), z in z_strategy(), tau in tau_strategy()) {
        let (c, ph) = ch.canonical();
        let a = theta(&ch, z, &tau, &ctl()).unwrap();
        let b = theta(&c, z, &tau, &ctl()).unwrap() * phase_factor(&ph);
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(b.norm()) + 1e-300);
    }
}
