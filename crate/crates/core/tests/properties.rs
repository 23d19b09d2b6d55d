mod common;

use kgonal::chain::{canonical_divisor, is_equivalent, normal_form, ChipList};
use kgonal::numerics::{rho, rho_bar};
use kgonal::rational::q;
use kgonal::tableaux::{
    enumerate_tableaux, enumerate_tableaux_parallel, is_displacement_tableau, lattice_path, random_construction_coords,
    random_tableau, rank, torus_dimension, Shape,
};
use kgonal::tropmap::{build_generic_map, check_assumptions, TropicalMapSkeleton};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rho_bar_dominates_rho_and_decreases_in_k(g in 2i64..30, r in 0i64..8, s in 1i64..12, k in 2i64..10) {
        let d = g + r - s;
        prop_assume!(d >= r);
        let a = rho_bar(g, r, d, k).unwrap();
        prop_assert!(a.value >= rho(g, r, d).unwrap());
        prop_assert!(rho_bar(g, r, d, k + 1).unwrap().value <= a.value);
        prop_assert!(a.maximizers.iter().all(|&l| rho(g, r - l, d).unwrap() - l * k == a.value));
    }

    #[test]
    fn normal_forms_are_class_invariants(seed in any::<u64>(), g in 1usize..7, d in -4i64..10) {
        let mut rng = common::rng(seed);
        let chain = common::random_chain(g, &mut rng).realized_for(q(60));
        let a = common::random_chips(&chain, d, &mut rng);
        let na = normal_form(&chain, &a).unwrap();
        prop_assert_eq!(na.d, d);
        prop_assert!(is_equivalent(&chain, &a, &na.to_chips()).unwrap());
        let b = common::random_chips(&chain, d, &mut rng);
        let same = normal_form(&chain, &b).unwrap() == na;
        prop_assert_eq!(same, is_equivalent(&chain, &a, &b).unwrap());
    }

    #[test]
    fn rank_drops_by_at_most_one(seed in any::<u64>(), g in 1usize..6, d in -2i64..10) {
        let mut rng = common::rng(seed);
        let chain = common::random_chain(g, &mut rng);
        let chips = common::random_chips(&chain, d, &mut rng);
        let div = normal_form(&chain, &chips).unwrap();
        let p = ChipList::single(common::random_location(&chain, &mut rng), 1);
        let less = div.minus(&chain, &p).unwrap();
        let (r0, r1) = (rank(&chain, &div), rank(&chain, &less));
        prop_assert!(r1 <= r0 && r0 <= r1 + 1);
        if d < 0 {
            prop_assert_eq!(r0, -1);
        }
        let k = normal_form(&chain, &canonical_divisor(&chain)).unwrap();
        prop_assert_eq!(rank(&chain, &k), g as i64 - 1);
    }

    #[test]
    fn random_tableaux_are_displacement_tableaux(seed in any::<u64>(), g in 2usize..12, cols in 1usize..4, rows in 1usize..4) {
        let mut rng = common::rng(seed);
        let chain = common::random_chain(g, &mut rng);
        let profile = chain.profile();
        if let Some(t) = random_tableau(Shape::new(&profile, cols, rows), &mut rng) {
            prop_assert!(is_displacement_tableau(&t, &profile));
            prop_assert_eq!(torus_dimension(&t, g), g - t.symbols().len());
            let path = lattice_path(&t, g).unwrap();
            for j in 0..=g {
                for i in 1..cols {
                    prop_assert!(path.at(j, i - 1) > path.at(j, i));
                }
            }
        }
    }

    #[test]
    fn parallel_enumeration_matches_serial(seed in any::<u64>(), g in 2usize..8, cols in 1usize..3, rows in 1usize..4) {
        let mut rng = common::rng(seed);
        let chain = common::random_chain(g, &mut rng);
        let profile = chain.profile();
        let serial = enumerate_tableaux(Shape::new(&profile, cols, rows), Some(500));
        prop_assert_eq!(&serial, &enumerate_tableaux_parallel(Shape::new(&profile, cols, rows), Some(500)));
        prop_assert!(serial.windows(2).all(|w| w[0].reading_word() < w[1].reading_word()));
    }

    #[test]
    fn generic_maps_balance_and_round_trip(seed in any::<u64>(), g in 3usize..8, cols in 2usize..4) {
        let mut rng = common::rng(seed);
        let chain = kgonal::chain::ChainOfCycles::from_profile(&vec![0; g]).unwrap();
        let rows = (g / cols).max(1);
        let t = random_tableau(Shape::new(&chain.profile(), cols, rows), &mut rng);
        prop_assume!(t.is_some());
        let t = t.unwrap();
        let cons = random_construction_coords(&chain, &t, &mut rng).unwrap();
        prop_assume!(kgonal::tableaux::is_vertex_avoiding(&chain, &t, &cons).unwrap());
        let map = build_generic_map(&chain, &t, &cons).unwrap();
        map.check_balancing().unwrap();
        let back = TropicalMapSkeleton::from_json(map.to_json()).unwrap();
        prop_assert_eq!(&back.edges, &map.edges);
        let a = check_assumptions(&map).unwrap();
        prop_assert!(a.chain_of_cycles && !a.superabundant);
    }
}
