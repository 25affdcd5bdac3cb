use centerkit::gen::random_matroid;
use centerkit::matroid::{matroid_intersection_max, FnOracle};
use centerkit::IndependenceOracle;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn brute_force_max(n: usize, a: &dyn IndependenceOracle, b: &dyn IndependenceOracle) -> usize {
    (0u32..1 << n)
        .filter_map(|mask| {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            (a.is_independent(&set) && b.is_independent(&set)).then_some(set.len())
        })
        .max()
        .unwrap_or(0)
}

/// Forest matroid of a small multigraph given as an edge list.
fn graphic(edges: Vec<(usize, usize)>, vertices: usize) -> FnOracle<impl Fn(&[usize]) -> bool> {
    let n = edges.len();
    FnOracle::new(n, move |set: &[usize]| {
        let mut parent: Vec<usize> = (0..vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        set.iter().all(|&e| {
            let (a, b) = (find(&mut parent, edges[e].0), find(&mut parent, edges[e].1));
            parent[a] = b;
            a != b
        })
    })
}

proptest! {
    #[test]
    fn partition_and_uniform_match_brute_force(seed in any::<u64>(), n in 0usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m1 = random_matroid(&mut rng, n);
        let m2 = random_matroid(&mut rng, n);
        let (o1, o2) = (m1.oracle(n).unwrap(), m2.oracle(n).unwrap());
        let got = matroid_intersection_max(&o1, &o2).unwrap();
        prop_assert!(o1.is_independent(&got) && o2.is_independent(&got));
        prop_assert_eq!(got.len(), brute_force_max(n, &o1, &o2));
    }

    #[test]
    fn graphic_against_partition(seed in any::<u64>(), n in 1usize..=10) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vertices = rng.gen_range(2..=5);
        let edges: Vec<(usize, usize)> = (0..n).map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices))).collect();
        let g = graphic(edges, vertices);
        let m = random_matroid(&mut rng, n);
        let o = m.oracle(n).unwrap();
        let got = matroid_intersection_max(&g, &o).unwrap();
        prop_assert!(g.is_independent(&got) && o.is_independent(&got));
        prop_assert_eq!(got.len(), brute_force_max(n, &g, &o));
    }
}
