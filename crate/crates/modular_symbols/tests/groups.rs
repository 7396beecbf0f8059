use modular_symbols::*;
use proptest::prelude::*;
use theta_engine::IntMatrix2;

#[test]
fn identity_is_in_every_group() {
    let id = IntMatrix2::identity();
    for spec in [
        GroupSpec::Gamma { n: 7 },
        GroupSpec::GammaN2N { n: 1 },
        GroupSpec::GammaN2N { n: 576 },
        GroupSpec::Bracket { n: 576, m: 24 },
        GroupSpec::Bracket { n: 15, m: 2 },
    ] {
        assert!(member(&id, &spec).unwrap(), "{}", spec);
    }
}

#[test]
fn theta_group_examples() {
    let g12 = GroupSpec::GammaN2N { n: 1 };
    assert!(member(&IntMatrix2::new(1, 2, 0, 1), &g12).unwrap());
    assert!(member(&IntMatrix2::new(0, -1, 1, 0), &g12).unwrap());
    assert!(!member(&IntMatrix2::new(1, 1, 0, 1), &g12).unwrap());
    assert!(!member(&IntMatrix2::new(1, 0, 1, 1), &g12).unwrap());
}

#[test]
fn bracket_translations() {
    for l in [2u64, 12, 24] {
        let li = l as i64;
        let spec = GroupSpec::Bracket { n: l, m: l };
        assert!(member(&IntMatrix2::new(1, 2 * li, 0, 1), &spec).unwrap());
        assert!(member(&IntMatrix2::new(1, 2, 0, 1), &spec).unwrap());
        assert!(!member(&IntMatrix2::new(1, 1, 0, 1), &spec).unwrap());
        assert!(member(&IntMatrix2::new(1, 0, 2 * li * li, 1), &spec).unwrap());
        assert!(!member(&IntMatrix2::new(1, 0, 2 * li, 1), &spec).unwrap());
    }
}

#[test]
fn modularity_test_element() {
    let g = IntMatrix2::new(-1151, -48, 27648, 1153);
    assert_eq!(g.det(), 1);
    assert!(member(&g, &GroupSpec::Bracket { n: 576, m: 24 }).unwrap());
    assert!(!member(&g, &GroupSpec::Bracket { n: 576, m: 48 }).unwrap());
}

#[test]
fn odd_bracket_parameter_is_rejected() {
    let e = member(&IntMatrix2::identity(), &GroupSpec::Bracket { n: 5, m: 3 }).unwrap_err();
    assert_eq!(e.name(), "InvalidGroup");
    let e = member(&IntMatrix2::identity(), &GroupSpec::Gamma { n: 0 }).unwrap_err();
    assert_eq!(e.name(), "InvalidGroup");
}

#[test]
fn group_json() {
    let v = serde_json::to_value(GroupSpec::Bracket { n: 576, m: 24 }).unwrap();
    assert_eq!(v, serde_json::json!({"kind": "Bracket", "n": 576, "m": 24}));
}

#[test]
fn cusps_are_normalized() {
    let c = Cusp::from_i64(6, -4).unwrap();
    assert_eq!(c.to_string(), "-3/2");
    assert_eq!(Cusp::from_i64(-5, 0).unwrap(), Cusp::infinity());
    assert_eq!(Cusp::infinity().to_string(), "1/0");
    assert!(Cusp::from_i64(0, 0).is_err());
    assert_eq!(serde_json::to_value(&c).unwrap(), serde_json::json!("-3/2"));
    let h = Cusp::from_i64(-14, 5).unwrap().to_infinity_matrix().unwrap();
    assert_eq!(h.det(), 1);
    assert_eq!((h.a, h.c), (-14, 5));
}

/// A random word in the generators `[[1, 2n], [0, 1]]` and `[[1, 0], [2n, 1]]` of a subgroup of `Gamma(2n)`.
fn word_in_gamma(n: i64, word: &[(bool, i8)]) -> IntMatrix2 {
    let mut g = IntMatrix2::identity();
    for &(upper, e) in word {
        let e = e as i64;
        let step = if upper { IntMatrix2::new(1, 2 * n * e, 0, 1) } else { IntMatrix2::new(1, 0, 2 * n * e, 1) };
        g = g.mul(&step).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gamma_2n_inside_gamma_n_2n_inside_gamma_n(n in 1u64..12, word in prop::collection::vec((any::<bool>(), -2i8..=2), 1..5)) {
        let g = word_in_gamma(n as i64, &word);
        let (g2n, gn2n, gn) = (GroupSpec::Gamma { n: 2 * n }, GroupSpec::GammaN2N { n }, GroupSpec::Gamma { n });
        prop_assert!(member(&g, &g2n).unwrap());
        prop_assert!(member(&g, &gn2n).unwrap());
        prop_assert!(member(&g, &gn).unwrap());
    }

    #[test]
    fn membership_is_closed_under_products(n in 1u64..6, w1 in prop::collection::vec((any::<bool>(), -2i8..=2), 1..4), w2 in prop::collection::vec((any::<bool>(), -2i8..=2), 1..4)) {
        let spec = GroupSpec::GammaN2N { n };
        let (a, b) = (word_in_gamma(n as i64, &w1), word_in_gamma(n as i64, &w2));
        prop_assert!(member(&a.mul(&b).unwrap(), &spec).unwrap());
        prop_assert!(member(&a.inverse().unwrap(), &spec).unwrap());
    }
}
