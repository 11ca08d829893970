mod common;

use proptest::prelude::*;

use common::*;
use pgroupoid::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// A random labeled P-groupoid: column y pairs up the shuffled other points.
fn p_groupoid(n: usize) -> impl Strategy<Value = CayleyTable> {
    let columns: Vec<_> = (0..n)
        .map(|y| Just((0..n).filter(|&v| v != y).collect::<Vec<_>>()).prop_shuffle())
        .collect();
    columns.prop_map(move |cols| {
        let mut rows = vec![vec![0; n]; n];
        for (y, col) in cols.iter().enumerate() {
            rows[y][y] = y;
            for pair in col.chunks(2) {
                rows[pair[0]][y] = pair[1];
                rows[pair[1]][y] = pair[0];
            }
        }
        CayleyTable::from_rows(rows).unwrap()
    })
}

fn odd_order() -> impl Strategy<Value = usize> {
    prop_oneof![Just(3usize), Just(5), Just(7), Just(9)]
}

fn groupoid_and_perm() -> impl Strategy<Value = (CayleyTable, Permutation)> {
    odd_order().prop_flat_map(|n| (p_groupoid(n), permutation(n)))
}

fn arbitrary_table() -> impl Strategy<Value = CayleyTable> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n).prop_map(move |cells| {
            CayleyTable::from_rows(cells.chunks(n).map(<[usize]>::to_vec).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_models_satisfy_the_axioms(t in odd_order().prop_flat_map(p_groupoid)) {
        prop_assert!(is_p_groupoid(&t).is_p_groupoid.holds);
        for x in 0..t.order() {
            let r = t.right_translation(x).unwrap();
            prop_assert!(r.then(&r).is_identity());
            prop_assert_eq!(r.fixed_points(), vec![x]);
        }
    }

    #[test]
    fn right_keyed_iff_columns_are_involutions(t in arbitrary_table()) {
        let n = t.order();
        let involutive = (0..n).all(|y| (0..n).all(|x| t.get(t.get(x, y), y) == x));
        prop_assert_eq!(Law::RightKeyed.check(&t).holds, involutive);
    }

    #[test]
    fn even_orders_never_satisfy_the_axioms(t in arbitrary_table()) {
        if t.order() % 2 == 0 {
            prop_assert!(!satisfies_axioms(&t));
        }
    }

    #[test]
    fn relabeling_gives_an_isomorphic_copy((t, sigma) in groupoid_and_perm()) {
        let u = t.relabel(&sigma);
        prop_assert!(is_isomorphism(&t, &u, &sigma));
        let found = find_isomorphism(&t, &u);
        prop_assert!(found.is_some());
        prop_assert!(is_isomorphism(&t, &u, &found.unwrap()));
        if t.order() <= 7 {
            prop_assert_eq!(canonical_form(&t).unwrap(), canonical_form(&u).unwrap());
        }
    }

    #[test]
    fn automorphisms_form_a_group(t in prop_oneof![Just(3usize), Just(5), Just(7)].prop_flat_map(p_groupoid)) {
        let auts = automorphisms(&t);
        prop_assert!(auts[0].is_identity());
        let set: std::collections::HashSet<_> = auts.iter().cloned().collect();
        for a in &auts {
            prop_assert!(set.contains(&a.inverse()));
            for b in &auts {
                prop_assert!(set.contains(&a.then(b)));
            }
        }
    }

    #[test]
    fn group_closure_ignores_generator_order(
        (n, order) in odd_order().prop_flat_map(|n| (Just(n), Just((0..2 * n).collect::<Vec<_>>()).prop_shuffle()))
    ) {
        let t = denes_keedwell(n).unwrap();
        let mut gens = Vec::new();
        for x in 0..n {
            gens.push(t.right_translation(x).unwrap());
            gens.push(t.left_translation(x).unwrap());
        }
        let shuffled: Vec<Permutation> = order.iter().map(|&i| gens[i].clone()).collect();
        let a = generate_group(n, &gens).unwrap();
        let b = generate_group(n, &shuffled).unwrap();
        prop_assert_eq!(a.order(), b.order());
        prop_assert_eq!(a.element_set(), b.element_set());
    }

    #[test]
    fn decomposition_round_trips((t, sigma) in groupoid_and_perm()) {
        let d = decomposition_from_groupoid(&t).unwrap();
        prop_assert_eq!(&groupoid_from_decomposition(&d).unwrap(), &t);
        let reparsed = pgroupoid::decomp::Decomposition::from_json(&d.to_json().to_string()).unwrap();
        prop_assert_eq!(&reparsed, &d);
        prop_assert_eq!(d.classes().iter().map(|c| c.edge_count()).sum::<usize>(), t.order() * (t.order() - 1) / 2);
        let moved = d.relabel(&sigma);
        prop_assert_eq!(groupoid_from_decomposition(&moved).unwrap(), t.relabel(&sigma));
        prop_assert!(decomposition_isomorphism(&d, &moved, false).is_some());
    }

    #[test]
    fn table_serializations_round_trip(t in arbitrary_table()) {
        prop_assert_eq!(&CayleyTable::parse(&t.to_text()).unwrap(), &t);
        prop_assert_eq!(&CayleyTable::parse_any(&t.to_json().to_string()).unwrap(), &t);
        prop_assert_eq!(&CayleyTable::parse_with_base(&t.to_text_with_base(1), 1).unwrap(), &t);
    }

    #[test]
    fn affine_tables_match_their_formula(n in odd_order(), a in 0usize..9, b in 0usize..9, c in 0usize..9) {
        let spec = AffineSpec { n, a_f: a % n, a_g: b % n, c: c % n };
        if let Ok(t) = medial_affine(spec) {
            for x in 0..n {
                for y in 0..n {
                    prop_assert_eq!(t.get(x, y), (spec.a_f * x + spec.a_g * y + spec.c) % n);
                }
            }
            prop_assert!(Law::Medial.check(&t).holds);
        }
    }
}

fn satisfies_axioms(t: &CayleyTable) -> bool {
    is_p_groupoid(t).is_p_groupoid.holds
}

#[test]
fn brute_force_oracle_matches_search_counts() {
    for n in [3usize, 5] {
        let expected = double_factorial_below(n as u64).pow(n as u32);
        assert_eq!(brute_force_p_groupoids(n).len() as u64, expected);
        let found = search_p_groupoids(n, &SearchConstraints::default()).unwrap();
        assert_eq!(found.labeled, expected);
    }
}

#[test]
fn subgroupoids_are_closed() {
    for n in [5usize, 9, 15] {
        let t = denes_keedwell(n).unwrap();
        for s in enumerate_subgroupoids(&t) {
            for &a in &s {
                for &b in &s {
                    assert!(s.contains(&t.get(a, b)));
                }
            }
        }
    }
}
