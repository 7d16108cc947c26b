use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_prime, is_prime_number, HYPERGRAPH_CAP};
use crate::graph::UndirectedGraph;
use crate::hypergraph::{product_of, DirectedHypergraph, Hyperarc, VertexId};

const MAX_ATTEMPTS: usize = 2_000;

/// Parameters for random hypergraphs. Output is a pure function of these.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n: usize,
    /// Maximum `|V(e)|`.
    pub r: usize,
    /// Expected arcs per vertex.
    pub arc_density: f64,
    /// Probability that an arc has `tail ≠ head`.
    pub directed_fraction: f64,
}

impl GeneratorConfig {
    pub fn new(seed: u64, n: usize) -> Self {
        GeneratorConfig { seed, n, r: 3, arc_density: 1.2, directed_fraction: 0.6 }
    }

    pub fn with_rank(mut self, r: usize) -> Self {
        self.r = r;
        self
    }

    pub fn with_density(mut self, d: f64) -> Self {
        self.arc_density = d;
        self
    }

    pub fn with_directed_fraction(mut self, p: f64) -> Self {
        self.directed_fraction = p;
        self
    }

    fn check(&self) -> Result<(), GenError> {
        if self.n < 1 || self.r < 2 || self.arc_density <= 0.0 || !(0.0..=1.0).contains(&self.directed_fraction) {
            return Err(GenError::BadConfig(*self));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator configuration {0:?}")]
    BadConfig(GeneratorConfig),
    #[error("cannot certify primality for {0} vertices")]
    CannotCertify(usize),
    #[error("no prime hypergraph found within the sampling budget")]
    BudgetExhausted,
    #[error("factor count must be 2 or 3, got {0}")]
    FactorCount(usize),
}

/// Split `set` into a tail and a head, keeping both non-empty.
fn split_arc(rng: &mut ChaCha8Rng, set: &[VertexId], directed_fraction: f64) -> Hyperarc {
    if !rng.random_bool(directed_fraction) {
        return Hyperarc::undirected(set.iter().copied());
    }
    loop {
        let mut tail = Vec::new();
        let mut head = Vec::new();
        for &v in set {
            match rng.random_range(0..4) {
                0 => {
                    tail.push(v);
                    head.push(v);
                }
                1 | 2 if tail.len() < head.len() || rng.random_bool(0.5) => tail.push(v),
                _ => head.push(v),
            }
        }
        if !tail.is_empty() && !head.is_empty() {
            return Hyperarc::new(tail, head);
        }
    }
}

/// A proper sub-arc `t' ⊆ t`, `h' ⊆ h` of `e`, if one with two vertices
/// exists.
fn nested_arc(rng: &mut ChaCha8Rng, e: &Hyperarc) -> Option<Hyperarc> {
    for _ in 0..8 {
        let t: Vec<_> = e.tail().iter().copied().filter(|_| rng.random_bool(0.6)).collect();
        let h: Vec<_> = e.head().iter().copied().filter(|_| rng.random_bool(0.6)).collect();
        if t.is_empty() || h.is_empty() {
            continue;
        }
        let sub = Hyperarc::new(t, h);
        if sub.size() >= 2 && sub != *e {
            return Some(sub);
        }
    }
    None
}

fn sample_connected(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> DirectedHypergraph {
    let n = cfg.n;
    if n == 1 {
        return DirectedHypergraph::unit("1");
    }
    let mut arcs: Vec<Hyperarc> = Vec::new();
    let mut seen: HashSet<Hyperarc> = HashSet::new();
    let mut push = |arcs: &mut Vec<Hyperarc>, e: Hyperarc| {
        if e.size() >= 2 && seen.insert(e.clone()) {
            arcs.push(e);
        }
    };
    // Each new vertex joins an arc with earlier ones, so the result is
    // connected regardless of what follows.
    let mut ids: Vec<u32> = (0..n as u32).collect();
    ids.shuffle(rng);
    for i in 1..n {
        let size = rng.random_range(2..=cfg.r.min(i + 1));
        let mut set = vec![VertexId(ids[i])];
        let mut earlier: Vec<u32> = ids[..i].to_vec();
        earlier.shuffle(rng);
        set.extend(earlier[..size - 1].iter().map(|&v| VertexId(v)));
        let e = split_arc(rng, &set, cfg.directed_fraction);
        push(&mut arcs, e);
    }
    let target = ((cfg.arc_density * n as f64).round() as usize).max(n - 1);
    let mut attempts = 0;
    while arcs.len() < target && attempts < 20 * target {
        attempts += 1;
        if rng.random_bool(0.2) && !arcs.is_empty() {
            let base = arcs[rng.random_range(0..arcs.len())].clone();
            if let Some(sub) = nested_arc(rng, &base) {
                push(&mut arcs, sub);
                continue;
            }
        }
        let size = rng.random_range(2..=cfg.r.min(n));
        let mut pool = ids.clone();
        pool.shuffle(rng);
        let set: Vec<VertexId> = pool[..size].iter().map(|&v| VertexId(v)).collect();
        let e = split_arc(rng, &set, cfg.directed_fraction);
        push(&mut arcs, e);
    }
    let names = (1..=n).map(|i| i.to_string()).collect();
    DirectedHypergraph::new(names, arcs).expect("generator emits valid arcs")
}

/// A connected valid hypergraph, not necessarily prime.
pub fn random_connected_hypergraph(cfg: &GeneratorConfig) -> Result<DirectedHypergraph, GenError> {
    cfg.check()?;
    Ok(sample_connected(&mut cfg.rng(), cfg))
}

/// Rejection-sample until the brute-force oracle certifies primality.
pub fn random_prime_hypergraph(cfg: &GeneratorConfig) -> Result<DirectedHypergraph, GenError> {
    cfg.check()?;
    if cfg.n < 2 || (cfg.n > HYPERGRAPH_CAP && !is_prime_number(cfg.n)) {
        return Err(GenError::CannotCertify(cfg.n));
    }
    let mut rng = cfg.rng();
    for _ in 0..MAX_ATTEMPTS {
        let h = sample_connected(&mut rng, cfg);
        if is_prime(&h).expect("size is within the oracle cap") {
            return Ok(h);
        }
    }
    Err(GenError::BudgetExhausted)
}

/// Product of `j ∈ {2, 3}` certified primes with sizes drawn from
/// `2..=cfg.n`, vertex names and order shuffled. Returns the ground-truth
/// factors alongside.
pub fn random_product(cfg: &GeneratorConfig, j: usize) -> Result<(DirectedHypergraph, Vec<DirectedHypergraph>), GenError> {
    if !(2..=3).contains(&j) {
        return Err(GenError::FactorCount(j));
    }
    cfg.check()?;
    let mut rng = cfg.rng();
    let sizes: Vec<usize> = (0..j).map(|_| rng.random_range(2..=cfg.n.max(2))).collect();
    random_product_with_sizes(&GeneratorConfig { seed: rng.next_u64(), ..*cfg }, &sizes)
}

/// Product of certified primes with exactly the given sizes.
pub fn random_product_with_sizes(
    cfg: &GeneratorConfig,
    sizes: &[usize],
) -> Result<(DirectedHypergraph, Vec<DirectedHypergraph>), GenError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    let mut factors = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let sub = GeneratorConfig { seed: rng.next_u64(), n, ..*cfg };
        factors.push(random_prime_hypergraph(&sub)?);
    }
    let product = product_of(&factors);
    Ok((shuffled(&product, rng.next_u64()), factors))
}

/// Random vertex order, arc order, and names `v<k>`.
pub fn shuffled(h: &DirectedHypergraph, seed: u64) -> DirectedHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = h.vertices().collect();
    order.shuffle(&mut rng);
    let mut labels: Vec<usize> = (0..h.n()).collect();
    labels.shuffle(&mut rng);
    let names = labels.into_iter().map(|i| format!("v{i}")).collect();
    let mut arc_order: Vec<usize> = (0..h.m()).collect();
    arc_order.shuffle(&mut rng);
    h.relabeled(&order, names, Some(&arc_order)).expect("relabeling preserves validity")
}

/// Product whose vertex count is `2^log2_n`, built from certified primes of
/// sizes 8, 4 and 2 with rank at most `r`.
pub fn random_power_of_two_product(
    seed: u64,
    log2_n: u32,
    r: usize,
) -> Result<(DirectedHypergraph, Vec<DirectedHypergraph>), GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining = log2_n;
    let mut sizes = Vec::new();
    while remaining > 0 {
        let bits = rng.random_range(1..=remaining.min(3));
        sizes.push(1usize << bits);
        remaining -= bits;
    }
    let cfg = GeneratorConfig::new(rng.next_u64(), 2).with_rank(r);
    random_product_with_sizes(&cfg, &sizes)
}

/// Connected graph: random spanning tree plus each other pair with
/// probability `p`.
pub fn random_connected_graph(seed: u64, n: usize, p: f64) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n as u32 {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).expect("generated edges are simple")
}
