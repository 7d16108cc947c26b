use hyperfactor::oracle::{
    brute_force_pfd_hypergraph, random_connected_hypergraph, random_prime_hypergraph, same_factors, shuffled,
    GeneratorConfig,
};
use hyperfactor::{
    arc_in_set, canonical_order, cartesian_product, graph_product, isomorphic, pfd_hypergraph, preprocessing,
    two_section, DirectedHypergraph, Hyperarc, VertexId,
};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = GeneratorConfig> {
    (any::<u64>(), 1usize..=8, 2usize..=4, 0.5f64..2.0, 0.0f64..=1.0).prop_map(|(seed, n, r, d, p)| {
        GeneratorConfig::new(seed, n).with_rank(r).with_density(d).with_directed_fraction(p)
    })
}

fn hypergraph() -> impl Strategy<Value = DirectedHypergraph> {
    config().prop_map(|cfg| random_connected_hypergraph(&cfg).unwrap())
}

fn small_prime() -> impl Strategy<Value = DirectedHypergraph> {
    (any::<u64>(), 2usize..=4, 2usize..=3).prop_map(|(seed, n, r)| {
        random_prime_hypergraph(&GeneratorConfig::new(seed, n).with_rank(r)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn section_of_product_is_product_of_sections(a in hypergraph(), b in hypergraph()) {
        let left = two_section(&cartesian_product(&a, &b));
        let right = graph_product(&two_section(&a), &two_section(&b));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_sizes_and_connectivity(a in hypergraph(), b in hypergraph()) {
        let p = cartesian_product(&a, &b);
        prop_assert_eq!(p.n(), a.n() * b.n());
        prop_assert_eq!(p.m(), a.m() * b.n() + a.n() * b.m());
        prop_assert!(p.is_connected());
        prop_assert_eq!(p.rank(), a.rank().max(b.rank()));
    }

    #[test]
    fn every_arc_moves_along_one_axis(a in hypergraph(), b in hypergraph()) {
        let p = cartesian_product(&a, &b);
        let pre = preprocessing(&p).unwrap();
        for e in p.arcs() {
            prop_assert!(pre.coordinates().arc_axis(e).is_some());
        }
    }

    #[test]
    fn canonical_order_is_sorted_and_complete(h in hypergraph(), probes in prop::collection::vec(any::<u64>(), 100)) {
        let pre = preprocessing(&h).unwrap();
        let c = pre.coordinates();
        let again = canonical_order(&h, c);
        prop_assert_eq!(again.arcs(), pre.arcs());
        prop_assert!(again.arcs().windows(2).all(|w| w[0] < w[1]));
        for e in h.arcs() {
            prop_assert!(again.contains_arc(c, e));
        }
        // Random candidate arcs agree with a linear scan.
        for seed in probes {
            let n = h.n() as u64;
            let t = VertexId((seed % n) as u32);
            let hd = VertexId(((seed >> 20) % n) as u32);
            let candidate = Hyperarc::new([t], [hd]);
            let tail: Vec<u32> = candidate.tail().iter().map(|&v| c.rank(v) as u32).collect();
            let head: Vec<u32> = candidate.head().iter().map(|&v| c.rank(v) as u32).collect();
            let mut tail = tail;
            let mut head = head;
            tail.sort_unstable();
            head.sort_unstable();
            let linear = again.arcs().iter().any(|a| a.tail == tail && a.head == head);
            prop_assert_eq!(arc_in_set(again.arcs(), &tail, &head), linear);
            prop_assert_eq!(linear, h.find_arc(&candidate).is_some());
        }
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(h in hypergraph(), seed in any::<u64>()) {
        let s = shuffled(&h, seed);
        prop_assert!(isomorphic(&h, &h).unwrap().is_some());
        prop_assert!(isomorphic(&h, &s).unwrap().is_some());
        prop_assert!(isomorphic(&s, &h).unwrap().is_some());
    }

    #[test]
    fn factor_count_is_logarithmic(h in hypergraph()) {
        let f = pfd_hypergraph(&h).unwrap();
        prop_assert!((1usize << f.len()) <= h.n());
        prop_assert!(f.verify(&h).is_ok());
    }

    #[test]
    fn layers_are_isomorphic_to_their_factor(a in small_prime(), b in small_prime()) {
        let p = cartesian_product(&a, &b);
        let f = pfd_hypergraph(&p).unwrap();
        let c = &f.coordinates;
        for (axis, factor) in f.factors.iter().enumerate() {
            for v in p.vertices() {
                let (sub, _) = c.extract_layer(&p, &[axis], v);
                prop_assert!(isomorphic(&sub, factor).unwrap().is_some());
            }
        }
    }

    #[test]
    fn oracle_is_multiplicative(a in small_prime(), b in small_prime()) {
        prop_assume!(a.n() * b.n() <= 8);
        let p = cartesian_product(&a, &b);
        let f = brute_force_pfd_hypergraph(&p).unwrap();
        prop_assert!(same_factors(&f, &[a, b]).unwrap());
    }
}

/// Exhaustive permutation check against the backtracking search.
fn permutations(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, (n - 1) as u32);
            out.push(q);
        }
    }
    out
}

fn brute_isomorphic(a: &DirectedHypergraph, b: &DirectedHypergraph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    permutations(a.n()).iter().any(|p| a.arcs().iter().all(|e| b.find_arc(&e.map(|v| VertexId(p[v.index()]))).is_some()))
}

#[test]
fn isomorphism_agrees_with_permutation_search() {
    for seed in 0..300u64 {
        let n = 2 + (seed % 5) as usize;
        let cfg = GeneratorConfig::new(seed, n).with_density(1.0 + (seed % 3) as f64 * 0.3);
        let a = random_connected_hypergraph(&cfg).unwrap();
        let b = random_connected_hypergraph(&GeneratorConfig { seed: seed / 2, ..cfg }).unwrap();
        assert_eq!(isomorphic(&a, &b).unwrap().is_some(), brute_isomorphic(&a, &b), "seed {seed}");
    }
}
