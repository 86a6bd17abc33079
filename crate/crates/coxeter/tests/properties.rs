//! Invariant checks: algebraic laws verified exhaustively on small balls
//! and by randomized search elsewhere. Deterministic tests use fixed seeds;
//! proptest cases shrink on failure.

mod common;

use std::collections::{BTreeSet, HashSet};

use common::{elem, parabolic_elements, rng, system};
use coxeter::{
    classify, is_finite_type, CoxeterMatrix, CoxeterSystem, Entry, ParityVerdict, RootVector,
    Sign, Verdict, Word, DEFAULT_CAP, DEFAULT_EPS,
};
use proptest::prelude::*;
use rand::Rng;

const FIXTURES: [&str; 6] = ["A3", "B3", "H3", "Dinf", "triangle(2,3,7)", "tilde-A2"];
const FINITE_RANK4: [&str; 10] = ["A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "G2", "H3"];

fn fixture_systems() -> Vec<(String, CoxeterSystem)> {
    FIXTURES.iter().map(|n| (n.to_string(), system(n))).collect()
}

// ---------------------------------------------------------------- matrices

fn arb_entry() -> impl Strategy<Value = Entry> {
    prop_oneof![
        Just(Entry::Finite(2)),
        Just(Entry::Finite(3)),
        Just(Entry::Finite(4)),
        Just(Entry::Finite(5)),
        Just(Entry::Finite(7)),
        Just(Entry::Infinite),
    ]
}

fn arb_matrix() -> impl Strategy<Value = CoxeterMatrix> {
    (1usize..=5)
        .prop_flat_map(|n| {
            proptest::collection::vec(arb_entry(), n * n.saturating_sub(1) / 2)
                .prop_map(move |upper| (n, upper))
        })
        .prop_map(|(n, upper)| {
            let mut rows = vec![vec![Entry::Finite(1); n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let e = it.next().unwrap();
                    rows[i][j] = e;
                    rows[j][i] = e;
                }
            }
            CoxeterMatrix::from_rows(rows).unwrap()
        })
}

proptest! {
    #[test]
    fn gram_is_symmetric_with_unit_diagonal(m in arb_matrix()) {
        let g = m.gram();
        let n = m.rank();
        for i in 0..n {
            prop_assert_eq!(g[i][i], 1.0);
            for j in 0..n {
                prop_assert_eq!(g[i][j], g[j][i]);
                if i != j {
                    prop_assert!(g[i][j] <= 0.0 && g[i][j] >= -1.0);
                }
            }
        }
    }

    #[test]
    fn components_partition_and_reassemble(m in arb_matrix()) {
        let comps = m.components();
        let mut seen: Vec<usize> = comps.iter().flat_map(|c| c.indices.clone()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..m.rank()).collect::<Vec<_>>());
        for c in &comps {
            for (a, &i) in c.indices.iter().enumerate() {
                for (b, &j) in c.indices.iter().enumerate() {
                    prop_assert_eq!(c.matrix.entry(a, b), m.entry(i, j));
                }
            }
        }
        // Links between different components are always commuting pairs.
        for (x, cx) in comps.iter().enumerate() {
            for cy in comps.iter().skip(x + 1) {
                for &i in &cx.indices {
                    for &j in &cy.indices {
                        prop_assert_eq!(m.entry(i, j), Entry::Finite(2));
                    }
                }
            }
        }
    }

    #[test]
    fn rank_two_dichotomy(e in arb_entry()) {
        let m = CoxeterMatrix::from_edges(2, &[(0, 1, e)]).unwrap();
        let classes = classify(&m, DEFAULT_EPS).unwrap();
        match e {
            // m = 2 splits the diagram into two finite points.
            Entry::Finite(_) => {
                prop_assert!(classes.iter().all(|(_, t)| t.verdict == Verdict::Finite));
            }
            Entry::Infinite => {
                prop_assert_eq!(classes.len(), 1);
                prop_assert_eq!(classes[0].1.verdict, Verdict::Affine);
                prop_assert_eq!(classes[0].1.kernel_dim, 1);
            }
        }
    }

    #[test]
    fn spherical_poset_is_downward_closed(m in arb_matrix()) {
        let sys = CoxeterSystem::new(m);
        let poset = sys.spherical_subsets().unwrap();
        let members: BTreeSet<Vec<usize>> = poset.subsets.iter().cloned().collect();
        prop_assert!(members.contains(&vec![]));
        for i in 0..sys.rank() {
            prop_assert!(members.contains(&vec![i]));
        }
        for t in &poset.subsets {
            for drop in 0..t.len() {
                let mut sub = t.clone();
                sub.remove(drop);
                prop_assert!(members.contains(&sub), "missing subset of {:?}", t);
            }
        }
    }
}

// ------------------------------------------------------------ linear action

#[test]
fn representation_preserves_the_form() {
    for (name, sys) in fixture_systems() {
        let n = sys.rank();
        let mut r = rng(0xF0F0 + n as u64);
        for _ in 0..100 {
            let len = r.gen_range(0..=20);
            let w = common::random_word(&mut r, n, len);
            let u: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
            let v: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
            let wu = sys.act(&w, &u).unwrap();
            let wv = sys.act(&w, &v).unwrap();
            let drift = (sys.form(&wu, &wv) - sys.form(&u, &v)).abs();
            assert!(drift <= 1e-6, "{name}: form drifted by {drift}");
        }
    }
}

#[test]
fn reflections_are_involutions() {
    for (name, sys) in fixture_systems() {
        let n = sys.rank();
        let mut r = rng(0x1210);
        for _ in 0..100 {
            let v: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
            for i in 0..n {
                let back = sys.reflect(i, &sys.reflect(i, &v).unwrap()).unwrap();
                for (a, b) in back.iter().zip(&v) {
                    assert!((a - b).abs() <= 1e-9, "{name}: reflect twice moved a vector");
                }
            }
        }
    }
}

#[test]
fn pair_products_have_exact_order() {
    for (name, sys) in fixture_systems() {
        let n = sys.rank();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = match sys.matrix().entry(i, j) {
                    Entry::Finite(m) => m as usize,
                    Entry::Infinite => continue,
                };
                // Track the whole basis: the product must act as the
                // identity map after exactly m rounds and never before.
                let mut basis: Vec<Vec<f64>> = (0..n)
                    .map(|k| {
                        let mut v = vec![0.0; n];
                        v[k] = 1.0;
                        v
                    })
                    .collect();
                for step in 1..=m {
                    for (k, v) in basis.iter_mut().enumerate() {
                        *v = sys.reflect(i, &sys.reflect(j, v).unwrap()).unwrap();
                        let back = (v[k] - 1.0).abs() <= 1e-9
                            && v.iter().enumerate().all(|(c, x)| c == k || x.abs() <= 1e-9);
                        if step == m {
                            assert!(back, "{name}: ({i},{j}) power {m} missed e_{k}");
                        }
                    }
                    if step < m {
                        let identity = basis.iter().enumerate().all(|(k, v)| {
                            (v[k] - 1.0).abs() <= 1e-9
                                && v.iter().enumerate().all(|(c, x)| c == k || x.abs() <= 1e-9)
                        });
                        assert!(!identity, "{name}: ({i},{j}) returned after {step} < {m} steps");
                    }
                }
            }
        }
    }
}

#[test]
fn root_images_always_certify() {
    for (name, sys) in fixture_systems() {
        let n = sys.rank();
        let mut r = rng(0x51D5);
        for _ in 0..200 {
            let len = r.gen_range(0..=20);
            let w = common::random_word(&mut r, n, len);
            for i in 0..n {
                let image = sys.act(&w, &sys.simple_root(i).unwrap().coords).unwrap();
                sys.certify_sign(&image)
                    .unwrap_or_else(|e| panic!("{name}: ambiguous root image: {e}"));
            }
        }
    }
}

// ------------------------------------------------------------------- words

proptest! {
    #[test]
    fn normal_form_is_idempotent(
        which in 0usize..6,
        raw in proptest::collection::vec(0usize..8, 0..14),
    ) {
        let sys = system(FIXTURES[which]);
        let letters: Vec<usize> = raw.iter().map(|x| x % sys.rank()).collect();
        let e = sys.reduce(&Word::from_indices(&letters).unwrap()).unwrap();
        let again = sys.reduce(e.word()).unwrap();
        prop_assert_eq!(&again, &e);
        prop_assert_eq!(again.len(), e.word().letters().len());
    }

    #[test]
    fn right_multiplication_steps_by_one(
        which in 0usize..6,
        raw in proptest::collection::vec(0usize..8, 0..14),
        s in 0usize..8,
    ) {
        let sys = system(FIXTURES[which]);
        let letters: Vec<usize> = raw.iter().map(|x| x % sys.rank()).collect();
        let e = sys.reduce(&Word::from_indices(&letters).unwrap()).unwrap();
        let shifted = sys.apply_generator(&e, s % sys.rank()).unwrap();
        prop_assert_eq!(
            shifted.len().abs_diff(e.len()),
            1,
            "multiplying by a generator must change length by one"
        );
    }

    #[test]
    fn group_laws_hold(
        which in 0usize..6,
        a in proptest::collection::vec(0usize..8, 0..10),
        b in proptest::collection::vec(0usize..8, 0..10),
        c in proptest::collection::vec(0usize..8, 0..10),
    ) {
        let sys = system(FIXTURES[which]);
        let reduce = |raw: &[usize]| {
            let letters: Vec<usize> = raw.iter().map(|x| x % sys.rank()).collect();
            sys.reduce(&Word::from_indices(&letters).unwrap()).unwrap()
        };
        let (x, y, z) = (reduce(&a), reduce(&b), reduce(&c));
        let xy = sys.multiply(&x, &y).unwrap();
        prop_assert_eq!(
            sys.multiply(&xy, &z).unwrap(),
            sys.multiply(&x, &sys.multiply(&y, &z).unwrap()).unwrap()
        );
        // Inverses reverse products and lengths are subadditive with the
        // right parity.
        let back = sys.multiply(&sys.inverse(&xy).unwrap(), &xy).unwrap();
        prop_assert!(back.is_identity());
        prop_assert_eq!(
            sys.inverse(&xy).unwrap(),
            sys.multiply(&sys.inverse(&y).unwrap(), &sys.inverse(&x).unwrap()).unwrap()
        );
        prop_assert!(xy.len() <= x.len() + y.len());
        prop_assert_eq!((x.len() + y.len()) % 2, xy.len() % 2);
        prop_assert_eq!(sys.inverse(&x).unwrap().len(), x.len());
    }

    #[test]
    fn coset_decomposition_is_lawful(
        which in 0usize..6,
        raw in proptest::collection::vec(0usize..8, 0..12),
        mask in 1u32..8,
    ) {
        let sys = system(FIXTURES[which]);
        let letters: Vec<usize> = raw.iter().map(|x| x % sys.rank()).collect();
        let w = sys.reduce(&Word::from_indices(&letters).unwrap()).unwrap();
        let t: Vec<usize> = (0..sys.rank()).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!t.is_empty());
        let (w0, a) = sys.coset_decompose(&w, &t).unwrap();
        prop_assert_eq!(&sys.multiply(&w0, &a).unwrap(), &w);
        prop_assert_eq!(w0.len() + a.len(), w.len());
        prop_assert!(a.word().indices().iter().all(|i| t.contains(i)));
        let descents = sys.right_descents(&w0).unwrap().in_set;
        prop_assert!(descents.iter().all(|s| !t.contains(s)));
    }
}

#[test]
fn folding_holds_on_radius_six_balls() {
    for (name, sys) in fixture_systems() {
        for x in sys.ball(6, DEFAULT_CAP).unwrap().iter() {
            let inv = sys.inverse(x).unwrap();
            let left_up = sys.right_descents(&inv).unwrap().out_set;
            let right_up = sys.right_descents(x).unwrap().out_set;
            for &s in &left_up {
                let sx = sys.multiply(&sys.generator(s).unwrap(), x).unwrap();
                for &t in &right_up {
                    let xt = sys.apply_generator(x, t).unwrap();
                    let sxt = sys.apply_generator(&sx, t).unwrap();
                    assert!(
                        sxt.len() == x.len() + 2 || sx == xt,
                        "{name}: folding failed at x={x}, s={}, t={}",
                        s + 1,
                        t + 1
                    );
                }
            }
        }
    }
}

#[test]
fn descent_sets_generate_finite_parabolics() {
    for (name, sys) in fixture_systems() {
        for x in sys.ball(8, DEFAULT_CAP).unwrap().iter() {
            let t = sys.right_descents(x).unwrap().in_set;
            if t.is_empty() {
                assert!(x.is_identity(), "{name}: only the identity has no descent");
                continue;
            }
            let sub = sys.matrix().submatrix(&t).unwrap();
            assert!(
                is_finite_type(&sub, DEFAULT_EPS).unwrap(),
                "{name}: descent set {t:?} of {x} is not spherical"
            );
        }
    }
}

#[test]
fn longest_element_grades_finite_groups() {
    for name in FINITE_RANK4 {
        let sys = system(name);
        let all: Vec<usize> = (0..sys.rank()).collect();
        let w0 = sys.longest_element(&all).unwrap();
        assert!(sys.multiply(&w0, &w0).unwrap().is_identity(), "{name}: w0 squared");
        assert_eq!(sys.right_descents(&w0).unwrap().in_set, all, "{name}: In(w0)");
        for x in sys.ball(w0.len(), DEFAULT_CAP).unwrap().iter() {
            let prod = sys.multiply(&w0, x).unwrap();
            assert_eq!(prod.len(), w0.len() - x.len(), "{name}: grading at {x}");
        }
    }
}

#[test]
fn longest_element_commutation_rank_four() {
    for name in ["A4", "B4", "D4", "F4"] {
        let sys = system(name);
        let n = sys.rank();
        for mask in 1u32..(1 << n) {
            let t: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let w0 = sys.longest_element(&t).unwrap();
            for s in (0..n).filter(|s| !t.contains(s)) {
                let g = sys.generator(s).unwrap();
                let commutes = sys.multiply(&g, &w0).unwrap() == sys.multiply(&w0, &g).unwrap();
                let all_two = t.iter().all(|&u| sys.matrix().entry(s, u) == Entry::Finite(2));
                assert_eq!(commutes, all_two, "{name}: s{} against {t:?}", s + 1);
            }
        }
    }
}

// ------------------------------------------------------------------- roots

#[test]
fn roots_biject_with_reflections_in_finite_groups() {
    for name in FINITE_RANK4 {
        let sys = system(name);
        let table = sys.enumerate_roots(64, 10_000).unwrap();
        assert!(table.closed, "{name}: root system should close");
        let w0 = sys.longest_element(&(0..sys.rank()).collect::<Vec<_>>()).unwrap();
        assert_eq!(table.len(), w0.len(), "{name}: positive roots vs longest length");
        let mut reflections = HashSet::new();
        for at in 0..table.len() {
            let refl = sys.reflection_at(&table, at).unwrap();
            assert_eq!(refl.element.len() % 2, 1, "{name}: reflections have odd length");
            assert!(
                sys.multiply(&refl.element, &refl.element).unwrap().is_identity(),
                "{name}: reflection squared"
            );
            // The reflection sends its own root to the negative.
            let image = sys.act(refl.element.word(), &refl.root.coords).unwrap();
            for (a, b) in image.iter().zip(&refl.root.coords) {
                assert!((a + b).abs() <= 1e-6, "{name}: root not negated");
            }
            reflections.insert(refl.element.to_string());
        }
        assert_eq!(reflections.len(), table.len(), "{name}: reflections are distinct");
    }
}

#[test]
fn enumerated_roots_are_positive_with_negative_mirrors() {
    for (name, sys) in fixture_systems() {
        let table = sys.enumerate_roots(8, DEFAULT_CAP).unwrap();
        for root in table.roots() {
            let plus = sys.root_vector(root.coords.clone()).unwrap();
            assert_eq!(plus.sign, Sign::Positive, "{name}: enumerated root not positive");
            let minus: Vec<f64> = root.coords.iter().map(|x| -x).collect();
            assert_eq!(
                sys.root_vector(minus).unwrap().sign,
                Sign::Negative,
                "{name}: mirror not negative"
            );
        }
    }
}

#[test]
fn inversion_counts_equal_lengths() {
    for name in ["A3", "B3", "Dinf", "triangle(2,3,7)"] {
        let sys = system(name);
        for x in sys.ball(6, DEFAULT_CAP).unwrap().iter() {
            let count = sys.count_inversions(x, DEFAULT_CAP).unwrap();
            assert_eq!(count, x.len(), "{name}: inversions of {x}");
        }
    }
}

// ---------------------------------------------------------------- dynamics

#[test]
fn parity_is_stable_under_larger_windows_and_negation() {
    for name in ["Dinf", "tilde-A2", "triangle(2,3,7)"] {
        let sys = system(name);
        let table = sys.enumerate_roots(5, DEFAULT_CAP).unwrap();
        let mut r = rng(0xAB5);
        for _ in 0..12 {
            let len = r.gen_range(1..=4);
            let raw = common::random_word(&mut r, sys.rank(), len);
            let w = sys.reduce(&raw).unwrap();
            for root in table.roots() {
                let alpha = RootVector { coords: root.coords.clone(), sign: Sign::Positive };
                let small = sys.classify_root(&w, &alpha, 20).unwrap();
                if small.verdict == ParityVerdict::Inconclusive {
                    continue;
                }
                let large = sys.classify_root(&w, &alpha, 30).unwrap();
                assert_eq!(small.verdict, large.verdict, "{name}: window changed a verdict");
                let minus = RootVector {
                    coords: root.coords.iter().map(|x| -x).collect(),
                    sign: Sign::Negative,
                };
                let mirrored = sys.classify_root(&w, &minus, 20).unwrap();
                assert_eq!(
                    small.verdict, mirrored.verdict,
                    "{name}: negation changed a verdict"
                );
            }
        }
    }
}

// ------------------------------------------------------------------- nerve

#[test]
fn coset_cell_counts_match_index_formulas() {
    for name in ["A2", "B2", "A3"] {
        let sys = system(name);
        let all: Vec<usize> = (0..sys.rank()).collect();
        let diameter = sys.longest_element(&all).unwrap().len();
        let order = sys.ball(diameter, DEFAULT_CAP).unwrap().total();
        let cells = sys.coset_cells(diameter, DEFAULT_CAP).unwrap();
        for (t, count) in &cells.cells {
            let sub_order = parabolic_elements(&sys, t).len();
            assert_eq!(*count, order / sub_order, "{name}: cosets of {t:?}");
        }
    }
}

// -------------------------------------------------------------- census

#[test]
fn orbit_growth_matches_direct_conjugation() {
    for name in ["A3", "Dinf", "triangle(2,3,7)"] {
        let sys = system(name);
        let mut r = rng(0x0CB1);
        for _ in 0..5 {
            let len = r.gen_range(1..=3);
            let w = sys.reduce(&common::random_word(&mut r, sys.rank(), len)).unwrap();
            let table = sys.orbit_growth(&w, 5, DEFAULT_CAP).unwrap();
            let ball = sys.ball(5, DEFAULT_CAP).unwrap();
            let mut prev = 0;
            for (radius, count) in &table.rows {
                let mut set = HashSet::new();
                for level in ball.levels.iter().take(radius + 1) {
                    for g in level {
                        let gi = sys.inverse(g).unwrap();
                        let conj = sys.multiply(&sys.multiply(g, &w).unwrap(), &gi).unwrap();
                        set.insert(conj.to_string());
                    }
                }
                assert_eq!(*count, set.len(), "{name}: orbit count at radius {radius}");
                assert!(*count >= prev, "{name}: orbit counts must not shrink");
                prev = *count;
            }
        }
    }
}

#[test]
fn centralizer_report_is_monotone_and_bounded() {
    for name in ["A3", "Dinf"] {
        let sys = system(name);
        let w = elem(&sys, "1 2");
        let report = sys.centralizer_ball(&w, 6, DEFAULT_CAP).unwrap();
        let mut prev = (0, 0);
        for row in &report.rows {
            assert!(row.cyclic <= row.centralizer, "{name}: cyclic exceeds centralizer");
            assert!(row.centralizer >= prev.0 && row.cyclic >= prev.1, "{name}: shrank");
            prev = (row.centralizer, row.cyclic);
        }
        // The identity is central: its centralizer is the whole ball.
        let id_report = sys.centralizer_ball(&sys.identity(), 4, DEFAULT_CAP).unwrap();
        let ball = sys.ball(4, DEFAULT_CAP).unwrap();
        let last = id_report.rows.last().unwrap();
        assert_eq!(last.centralizer, ball.total(), "{name}: identity centralizer");
        assert_eq!(last.cyclic, 1, "{name}: identity powers");
    }
}

#[test]
fn growth_series_equals_sphere_sizes() {
    for (name, sys) in fixture_systems() {
        let series = sys.growth_series(6, DEFAULT_CAP).unwrap();
        let ball = sys.ball(6, DEFAULT_CAP).unwrap();
        assert_eq!(series, ball.sphere_sizes(), "{name}: growth series");
    }
}
