use hyperfactor::oracle::{brute_force_pfd_graph, random_connected_graph, same_graph_factors};
use hyperfactor::{coordinates_from_coloring, graph_product, pfd_graph, UndirectedGraph};

fn prime_graph(seed: u64, n: usize) -> UndirectedGraph {
    (0..)
        .map(|k| random_connected_graph(seed.wrapping_mul(1_000) + k, n, 0.35))
        .find(|g| brute_force_pfd_graph(g).unwrap().len() == 1)
        .unwrap()
}

#[test]
fn random_graphs_match_the_oracle() {
    for seed in 0..300u64 {
        let n = 2 + (seed % 10) as usize;
        let p = [0.15, 0.3, 0.6][(seed % 3) as usize];
        let g = random_connected_graph(seed, n, p);
        let ours = pfd_graph(&g).unwrap();
        let truth = brute_force_pfd_graph(&g).unwrap();
        assert!(same_graph_factors(&ours.factors, &truth).unwrap(), "seed {seed}: {}", g.canonical_string());
    }
}

#[test]
fn products_of_primes_are_recovered() {
    for seed in 0..60u64 {
        let a = prime_graph(seed, 2 + (seed % 4) as usize);
        let b = prime_graph(seed + 7_777, 2 + (seed / 4 % 4) as usize);
        let c = prime_graph(seed + 99_999, 2 + (seed % 3) as usize);
        let g = graph_product(&graph_product(&a, &b), &c);
        let f = pfd_graph(&g).unwrap();
        assert!(same_graph_factors(&f.factors, &[a, b, c]).unwrap(), "seed {seed}");
        // The returned coloring is itself a product relation.
        let again = coordinates_from_coloring(&g, &f.coloring).unwrap();
        assert_eq!(again.sizes(), f.coordinates.sizes());
    }
}

#[test]
fn hypercubes_split_into_edges() {
    for d in 1..=8 {
        let f = pfd_graph(&UndirectedGraph::hypercube(d)).unwrap();
        assert_eq!(f.k(), d as usize);
        assert!(f.factors.iter().all(|x| *x == UndirectedGraph::complete(2)));
    }
}
