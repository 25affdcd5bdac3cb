use centerkit::gen::{random_cover_graph, random_weighted_graph};
use centerkit::matching::exhaustive::brute_force_mwpm;
use centerkit::matching::{brute_force_edge_cover, solve_mwpm};
use centerkit::{solve_max_k_edge_cover, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn edge_cover_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = rng.gen_range(1..=7);
        let e = rng.gen_range(0..=12);
        let k = rng.gen_range(0..=4);
        let g = random_cover_graph(&mut rng, v, e, 9).unwrap();
        let cover = solve_max_k_edge_cover(&g, k).unwrap();
        prop_assert!(cover.edges.len() <= k);
        prop_assert_eq!(cover.weight, g.covered_weight(&cover.edges));
        prop_assert_eq!(cover.weight, brute_force_edge_cover(&g, k).unwrap());
    }

    #[test]
    fn blossom_matches_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(0..=10);
        let density = rng.gen_range(0.2..=1.0);
        let g = random_weighted_graph(&mut rng, n, density, 20).unwrap();
        match (solve_mwpm(&g), brute_force_mwpm(&g)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.weight, b.weight);
                prop_assert_eq!(a.edges.len() * 2, n);
            }
            (Err(Error::NoPerfectMatching), Err(Error::NoPerfectMatching)) => {}
            (a, b) => panic!("disagreement: {a:?} vs {b:?}"),
        }
    }
}
