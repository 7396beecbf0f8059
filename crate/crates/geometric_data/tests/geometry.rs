use geometric_data::*;
use num_complex::Complex64;
use presentation::{monic_ordered, normalize_modular, relations, Presentation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rm_core::{alpha, validate, IntMatrix2};
use std::sync::LazyLock;
use theta_engine::{SeriesControl, UpperHalfPoint};

fn present(g: [i64; 4]) -> Presentation {
    let rm = validate(&IntMatrix2::new(g[0], g[1], g[2], g[3])).unwrap();
    relations(&rm, &UpperHalfPoint::from_parts(0.0, 2.0).unwrap(), &SeriesControl::default()).unwrap()
}

static FIRST: LazyLock<Presentation> = LazyLock::new(|| present([4, -1, 5, -1]));
static SUPER: LazyLock<Presentation> = LazyLock::new(|| present([5, -1, 6, -1]));

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut d = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm())).unwrap();
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        if a[k][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        d *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
    }
    d
}

#[test]
fn multilinearization_transcribes_terms() {
    for p in [&*FIRST, &*SUPER] {
        let rels = multilinearize(p);
        assert_eq!(rels.len(), p.relations.len());
        for (b, r) in rels.iter().zip(&p.relations) {
            assert_eq!(b.terms.len(), r.terms.len());
            for t in &b.terms {
                assert_eq!(t.slot1 as i64, alpha(&p.rm, b.mu, t.slot2 as i64).unwrap());
            }
        }
    }
}

#[test]
fn evaluation_on_basis_vectors() {
    let p = &*SUPER;
    let c = p.rm.n_gen();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let u = random_point(&mut rng, c);
    for (b, r) in multilinearize(p).iter().zip(&p.relations) {
        for j in 1..=c {
            let mut e = vec![Complex64::new(0.0, 0.0); c];
            e[j - 1] = Complex64::new(1.0, 0.0);
            let expected = r
                .terms
                .iter()
                .find(|t| t.right_index == j)
                .map_or(Complex64::new(0.0, 0.0), |t| t.coeff * u[t.left_index - 1]);
            assert_eq!(b.eval(&u, &e), expected);
        }
    }
}

#[test]
fn monic_slots_are_swapped_back() {
    let p = &*SUPER;
    let monic = monic_ordered(&normalize_modular(p, &SeriesControl::default()).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (u, v) = (random_point(&mut rng, 6), random_point(&mut rng, 6));
    for (b, r) in multilinearize(&monic).iter().zip(&monic.relations) {
        // monic relations carry x_j x_alpha; slot 1 is still x_alpha
        let direct: Complex64 = r.terms.iter().map(|t| t.coeff * u[t.right_index - 1] * v[t.left_index - 1]).sum();
        assert!((b.eval(&u, &v) - direct).norm() < 1e-14 * (1.0 + direct.norm()));
    }
}

#[test]
fn rank_one_pairs_match_the_tensor() {
    // w = sum_j v_j e_alpha(j) (x) e_j pairs with u (x) x through f(u, x) = <w, u (x) x>
    let p = &*FIRST;
    let rels = multilinearize(p);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (u, x) = (random_point(&mut rng, 5), random_point(&mut rng, 5));
    for (b, r) in rels.iter().zip(&p.relations) {
        let mut w = [[Complex64::new(0.0, 0.0); 5]; 5];
        for t in &r.terms {
            w[t.left_index - 1][t.right_index - 1] += t.coeff;
        }
        let mut pairing = Complex64::new(0.0, 0.0);
        for a in 0..5 {
            for j in 0..5 {
                pairing += w[a][j] * u[a] * x[j];
            }
        }
        assert!((b.eval(&u, &x) - pairing).norm() < 1e-13 * (1.0 + pairing.norm()));
    }
}

#[test]
fn omega_shapes_and_sparsity() {
    for (p, rows, cols) in [(&*FIRST, 10, 5), (&*SUPER, 12, 6)] {
        let m = omega_matrix(p).unwrap();
        assert_eq!((m.n_rows(), m.n_cols), (rows, cols));
        let bound = p.rm.trace() as usize + 1;
        assert!((0..rows).all(|r| m.nonzeros_in_row(r) <= bound));
        assert_eq!(m.labels[0], (1, 1));
    }
}

#[test]
fn minor_counts_and_homogeneity() {
    for (p, count, c) in [(&*FIRST, 252, 5u32), (&*SUPER, 924, 6)] {
        let m = omega_matrix(p).unwrap();
        let minors = minor_equations(&m, 1000).unwrap();
        assert_eq!(minors.len(), count);
        assert_eq!(binomial(m.n_rows() as u128, c as u128), count as u128);
        for mp in &minors {
            assert!(mp.terms.keys().all(|e| e.iter().sum::<u32>() == c));
        }
        assert!(minors.windows(2).all(|w| w[0].rows < w[1].rows));
    }
}

#[test]
fn minors_are_determinants() {
    let p = &*SUPER;
    let m = omega_matrix(p).unwrap();
    let minors = minor_equations(&m, DEFAULT_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x = random_point(&mut rng, 6);
    let full = m.at(&x);
    for mp in minors.iter().step_by(37) {
        let sub: Vec<Vec<Complex64>> = mp.rows.iter().map(|&r| full[r - 1].clone()).collect();
        let d = det(sub);
        let scale: f64 = mp.rows.iter().map(|&r| full[r - 1].iter().map(|z| z.norm()).sum::<f64>()).product();
        assert!((mp.eval(&x) - d).norm() <= 1e-10 * scale, "{:?} {} {} {}", mp.rows, mp.eval(&x), d, scale);
    }
}

#[test]
fn identically_zero_minors_are_reported() {
    let p = &*SUPER;
    let m = omega_matrix(p).unwrap();
    let minors = minor_equations(&m, DEFAULT_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let x = random_point(&mut rng, 6);
    let full = m.at(&x);
    for mp in minors.iter().filter(|mp| mp.is_identically_zero()) {
        let sub: Vec<Vec<Complex64>> = mp.rows.iter().map(|&r| full[r - 1].clone()).collect();
        let xmax = x.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        let bound: f64 = mp
            .rows
            .iter()
            .map(|&r| m.entries[r - 1].iter().flatten().map(|e| e.coeff.norm() * xmax).sum::<f64>())
            .product();
        let d = det(sub).norm();
        assert!(d <= 1e-11 * bound, "{:?} {:e} {:e}", mp.rows, d, bound);
    }
    let json = minors_json(&minors);
    assert_eq!(json.as_array().unwrap().len(), 924);
}

#[test]
fn cap_is_enforced() {
    let m = omega_matrix(&SUPER).unwrap();
    let e = minor_equations(&m, 923).unwrap_err();
    assert_eq!(e.name(), "CombinatorialCap");
}

#[test]
fn zero_vectors_are_not_points() {
    let rels = multilinearize(&SUPER);
    let z = vec![Complex64::new(0.0, 0.0); 6];
    let one = vec![Complex64::new(1.0, 0.0); 6];
    assert_eq!(graph_member(&rels, &z, &one, 1e-6).unwrap_err().name(), "NotProjective");
    assert_eq!(graph_member(&rels, &one, &z, 1e-6).unwrap_err().name(), "NotProjective");
    assert_eq!(graph_member(&rels, &one[..3], &one, 1e-6).unwrap_err().name(), "InvalidArgument");
}

/// Random relations on the support of `p` adjusted to vanish at `(u0, v0)`.
fn planted(p: &Presentation, seed: u64) -> (Vec<BiformRelation>, Vec<Complex64>, Vec<Complex64>) {
    let c = p.rm.n_gen();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u0, v0) = (random_point(&mut rng, c), random_point(&mut rng, c));
    let mut rels = multilinearize(p);
    for r in rels.iter_mut() {
        for t in r.terms.iter_mut() {
            t.coeff = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let value = r.eval(&u0, &v0);
        let t = &mut r.terms[0];
        t.coeff -= value / (u0[t.slot1 - 1] * v0[t.slot2 - 1]);
    }
    (rels, u0, v0)
}

#[test]
fn planted_zero_is_found() {
    let (rels, u0, v0) = planted(&SUPER, 17);
    assert!(graph_member(&rels, &u0, &v0, 1e-12).unwrap());
    let found = als_search(&rels, 6, 400, 200, 1).unwrap();
    assert!(found.residual < 1e-6, "{}", found.residual);
    assert!(graph_member(&rels, &found.u, &found.v, 1e-6).unwrap());
    // u lies on the variety cut out by the minors
    let minors = minor_equations(&omega_from_biforms(&rels, 6).unwrap(), DEFAULT_CAP).unwrap();
    for mp in &minors {
        let scale = mp.abs_eval(&found.u);
        if scale > 0.0 {
            assert!(mp.eval(&found.u).norm() <= 1e-6 * scale);
        }
    }
}

#[test]
fn search_on_the_examples_agrees_with_membership() {
    for p in [&*FIRST, &*SUPER] {
        let rels = multilinearize(p);
        let c = p.rm.n_gen();
        let found = als_search(&rels, c, 10, 100, 2).unwrap();
        assert_eq!(graph_member(&rels, &found.u, &found.v, 1e-6).unwrap(), found.residual < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bihomogeneity(seed in any::<u64>(), lr in -3.0f64..3.0, li in -3.0f64..3.0, mr in -3.0f64..3.0, mi in -3.0f64..3.0) {
        let rels = multilinearize(&SUPER);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (random_point(&mut rng, 6), random_point(&mut rng, 6));
        let (l, m) = (Complex64::new(lr, li), Complex64::new(mr, mi));
        let su: Vec<_> = u.iter().map(|z| z * l).collect();
        let sv: Vec<_> = v.iter().map(|z| z * m).collect();
        for r in &rels {
            let a = r.eval(&su, &sv);
            let b = r.eval(&u, &v) * l * m;
            prop_assert!((a - b).norm() <= 1e-13 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn membership_is_scale_invariant(seed in any::<u64>(), lr in 0.01f64..100.0, ph in 0.0f64..6.3, mr in 0.01f64..100.0) {
        let (rels, u0, v0) = planted(&SUPER, seed);
        let l = Complex64::from_polar(lr, ph);
        let m = Complex64::new(mr, 0.0);
        let su: Vec<_> = u0.iter().map(|z| z * l).collect();
        let sv: Vec<_> = v0.iter().map(|z| z * m).collect();
        prop_assert_eq!(graph_member(&rels, &su, &sv, 1e-6).unwrap(), graph_member(&rels, &u0, &v0, 1e-6).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let (u, v) = (random_point(&mut rng, 6), random_point(&mut rng, 6));
        let su: Vec<_> = u.iter().map(|z| z * l).collect();
        let sv: Vec<_> = v.iter().map(|z| z * m).collect();
        prop_assert_eq!(graph_member(&rels, &su, &sv, 1e-6).unwrap(), graph_member(&rels, &u, &v, 1e-6).unwrap());
    }
}
