//! Seeded property tests across the diagram calculus, the `D_{n,k}` engine
//! and the duality layer. Each case draws its objects from a proptest seed,
//! so failures shrink to a reproducible seed.

use std::sync::Arc;

use parasimplex::chain::{random_complex, ChainMap};
use parasimplex::dgmcalc::{
    cof, fib_cof_unit, is_bicartesian, lkan, lkan_unit_witness, random_diagram, rkan, tcof, tfib,
    Diagram,
};
use parasimplex::duality::{
    extract_triangle, filtered_object, filtration_checks, in_indeterminacy, phi, psi_square_check,
    random_toda_data_homotopic, round_trip_check, toda, toda_alt, xi_check,
};
use parasimplex::homposet::{FinitePoset, PosetMap};
use parasimplex::paramap::Symmetry;
use parasimplex::snk::{j_cube_check, random_slice_object, symmetry_on_slice};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

fn cube_diagram(p: u32, d: usize, seed: u64) -> Diagram {
    random_diagram(p, Arc::new(FinitePoset::cube(d)), 2, 2, None, &mut rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cone_of_identity_is_acyclic(p in prime(), seed in any::<u64>()) {
        let c = random_complex(p, 3, 3, &mut rng(seed));
        let x = Diagram::arrow_diagram(&ChainMap::identity(&c));
        prop_assert!(cof(&x).unwrap().value(1).is_acyclic());
    }

    #[test]
    fn cofiber_unit_is_a_pointwise_qiso(p in prime(), d in 1usize..=2, seed in any::<u64>()) {
        let x = cube_diagram(p, d, seed);
        let u = fib_cof_unit(&x, &(0..d).collect::<Vec<_>>()).unwrap();
        prop_assert!(u.is_pointwise_qiso());
    }

    #[test]
    fn tcof_and_tfib_vanish_together(p in prime(), d in 1usize..=3, seed in any::<u64>()) {
        let x = cube_diagram(p, d, seed);
        let (c, f) = (tcof(&x).unwrap().is_acyclic(), tfib(&x).unwrap().is_acyclic());
        prop_assert_eq!(c, f);
        prop_assert_eq!(is_bicartesian(&x).unwrap(), c);
    }

    #[test]
    fn left_kan_extension_along_a_face_is_bicartesian(p in prime(), seed in any::<u64>()) {
        // Left Kan extension from the punctured square is a pushout.
        let sq = Arc::new(FinitePoset::cube(2));
        let punct = Arc::new(sq.subposet(|a| sq.element(a) != &vec![1, 1]));
        let u = PosetMap::inclusion(punct.clone(), sq).unwrap();
        let x = random_diagram(p, punct, 2, 2, None, &mut rng(seed));
        let y = lkan(&x, &u).unwrap();
        prop_assert!(is_bicartesian(&y).unwrap());
        prop_assert!(lkan_unit_witness(&x, &u).unwrap().is_pointwise_qiso());
        prop_assert!(y.restrict(&u).unwrap().profile().agrees_with(&x.profile()));
    }

    #[test]
    fn right_kan_extension_restricts_back(p in prime(), seed in any::<u64>()) {
        let sq = Arc::new(FinitePoset::cube(2));
        let punct = Arc::new(sq.subposet(|a| sq.element(a) != &vec![0, 0]));
        let u = PosetMap::inclusion(punct.clone(), sq).unwrap();
        let x = random_diagram(p, punct, 2, 2, None, &mut rng(seed));
        let y = rkan(&x, &u).unwrap();
        prop_assert!(is_bicartesian(&y).unwrap());
        prop_assert!(y.restrict(&u).unwrap().profile().agrees_with(&x.profile()));
    }
}

/// Parameter pairs small enough for many cases.
fn small_pair() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![(1usize, 2usize), (2, 2), (1, 3)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn window_models_satisfy_p1_and_p2((n, k) in small_pair(), p in prime(), seed in any::<u64>()) {
        let x = random_slice_object(n, k, p, 2, seed).unwrap();
        let r = x.window().unwrap().check().unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn s2_acts_as_suspension((n, k) in small_pair(), p in prime(), seed in any::<u64>()) {
        let x = random_slice_object(n, k, p, 2, seed).unwrap();
        prop_assert!(j_cube_check(&x).unwrap().iter().all(|c| c.passed()));
        let s2 = symmetry_on_slice(&x, Symmetry::S2, 1).unwrap();
        prop_assert!(s2.profile().agrees_with(&x.shift(k as i32 - 1).profile()));
    }

    #[test]
    fn fractional_calabi_yau((n, k) in small_pair(), p in prime(), seed in any::<u64>()) {
        let x = random_slice_object(n, k, p, 2, seed).unwrap();
        let y = symmetry_on_slice(&x, Symmetry::S3, (n + k) as i64).unwrap();
        prop_assert!(y.profile().agrees_with(&x.shift((n * (k - 1)) as i32).profile()));
    }

    #[test]
    fn phi_round_trips((n, k) in small_pair(), p in prime(), seed in any::<u64>()) {
        let x = random_slice_object(n, k, p, 2, seed).unwrap();
        let y = phi(&x).unwrap();
        prop_assert_eq!((y.n(), y.k()), (k - 1, n + 1));
        prop_assert!(round_trip_check(&x).unwrap().passed);
        prop_assert!(xi_check(&x).unwrap().passed);
    }

    #[test]
    fn triangle_data_witness_the_shift((n, k) in small_pair(), p in prime(), seed in any::<u64>()) {
        let t = extract_triangle(&random_slice_object(n, k, p, 2, seed).unwrap()).unwrap();
        prop_assert!(t.shift_witness().passed);
    }

    #[test]
    fn psi_square_on_chains(n in 0usize..=3, p in prime(), seed in any::<u64>()) {
        let y = random_diagram(p, Arc::new(FinitePoset::chain(n)), 2, 2, None, &mut rng(seed));
        let v = psi_square_check(&y).unwrap();
        prop_assert!(v.passed, "{}", v.detail);
    }

    #[test]
    fn filtrations_are_exact(n in 1usize..=3, p in prime(), seed in any::<u64>()) {
        let y = random_diagram(p, Arc::new(FinitePoset::chain(n)), 2, 2, None, &mut rng(seed));
        let (x, f) = filtered_object(&y).unwrap();
        prop_assert_eq!(f.len(), n + 1);
        let v = filtration_checks(&x, &f).unwrap();
        prop_assert!(v.passed, "{}", v.detail);
    }

    #[test]
    fn toda_routes_agree_modulo_indeterminacy(n in 3usize..=4, p in prime(), seed in any::<u64>()) {
        let x = random_toda_data_homotopic(n, p, 2, &mut rng(seed)).unwrap();
        let (a, b) = (toda(&x).unwrap(), toda_alt(&x).unwrap());
        prop_assert!(in_indeterminacy(&x, &a.class).unwrap());
        prop_assert!(in_indeterminacy(&x, &a.class.sub(&b.class).unwrap()).unwrap());
    }
}
