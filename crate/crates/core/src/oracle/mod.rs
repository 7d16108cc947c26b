//! Brute-force ground truth for tiny instances, plus seeded generators.
//!
//! The search here shares nothing with the factorization pipeline beyond
//! the data types: it tries every placement of the vertices on an `a × b`
//! grid and keeps one where each arc runs along a single axis and all rows
//! (and all columns) carry the same arcs.

mod generate;

pub use generate::{
    random_connected_graph, random_connected_hypergraph, random_power_of_two_product, random_prime_hypergraph,
    random_product, random_product_with_sizes, shuffled, GenError, GeneratorConfig,
};

use std::collections::BTreeSet;

use crate::graph::UndirectedGraph;
use crate::hypergraph::{DirectedHypergraph, Hyperarc, VertexId};
use crate::iso::{isomorphic, BudgetExceeded};

pub const HYPERGRAPH_CAP: usize = 8;
pub const GRAPH_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("input is not connected")]
    Disconnected,
}

/// Exhaustive prime factorization of a hypergraph with at most
/// [`HYPERGRAPH_CAP`] vertices. `K1` yields the empty multiset.
pub fn brute_force_pfd_hypergraph(h: &DirectedHypergraph) -> Result<Vec<DirectedHypergraph>, OracleError> {
    if h.n() > HYPERGRAPH_CAP {
        return Err(OracleError::CapExceeded { n: h.n(), cap: HYPERGRAPH_CAP });
    }
    if !h.is_connected() {
        return Err(OracleError::Disconnected);
    }
    Ok(factor_all(h))
}

/// Exhaustive prime factorization of a graph with at most [`GRAPH_CAP`]
/// vertices.
pub fn brute_force_pfd_graph(g: &UndirectedGraph) -> Result<Vec<UndirectedGraph>, OracleError> {
    if g.n() > GRAPH_CAP {
        return Err(OracleError::CapExceeded { n: g.n(), cap: GRAPH_CAP });
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let factors = factor_all(&g.to_hypergraph());
    Ok(factors.iter().map(hypergraph_to_graph).collect())
}

/// Whether the oracle finds no non-trivial split.
pub fn is_prime(h: &DirectedHypergraph) -> Result<bool, OracleError> {
    if h.n() < 2 {
        return Ok(false);
    }
    if is_prime_number(h.n()) {
        return Ok(h.is_connected());
    }
    Ok(brute_force_pfd_hypergraph(h)?.len() == 1)
}

pub fn is_prime_number(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn hypergraph_to_graph(h: &DirectedHypergraph) -> UndirectedGraph {
    let edges = h.arcs().iter().map(|e| {
        let vs = e.vertices();
        (vs[0].0, vs[1].0)
    });
    UndirectedGraph::from_edges(h.n(), edges).expect("factor of a simple graph is simple")
}

fn factor_all(h: &DirectedHypergraph) -> Vec<DirectedHypergraph> {
    if h.n() == 1 {
        return Vec::new();
    }
    match find_split(h) {
        None => vec![h.clone()],
        Some((a, b)) => {
            let mut out = factor_all(&a);
            out.extend(factor_all(&b));
            out
        }
    }
}

/// Some `H ≅ A □ B` with `|A|, |B| ≥ 2`, if one exists.
fn find_split(h: &DirectedHypergraph) -> Option<(DirectedHypergraph, DirectedHypergraph)> {
    let n = h.n();
    (2..n).filter(|a| n.is_multiple_of(*a) && a * a <= n).find_map(|rows| GridSearch::new(h, rows, n / rows).run())
}

struct GridSearch<'a> {
    h: &'a DirectedHypergraph,
    rows: usize,
    cols: usize,
    order: Vec<usize>,
    incidence: Vec<Vec<usize>>,
    cell: Vec<Option<(usize, usize)>>,
    taken: Vec<bool>,
}

impl<'a> GridSearch<'a> {
    fn new(h: &'a DirectedHypergraph, rows: usize, cols: usize) -> Self {
        let incidence = h.incidence();
        // Weak-path order from vertex 0: every later vertex shares an arc
        // with an earlier one.
        let mut order = vec![0usize];
        let mut seen = vec![false; h.n()];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &idx in &incidence[u] {
                for w in h.arcs()[idx].vertices() {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        order.push(w.index());
                    }
                }
            }
            i += 1;
        }
        GridSearch { h, rows, cols, order, incidence, cell: vec![None; h.n()], taken: vec![false; rows * cols] }
    }

    fn run(mut self) -> Option<(DirectedHypergraph, DirectedHypergraph)> {
        let anchor = self.order[0];
        self.cell[anchor] = Some((0, 0));
        self.taken[0] = true;
        self.extend(1)
    }

    /// Assigned vertices of every arc through `v` stay on one row or one
    /// column.
    fn arcs_aligned(&self, v: usize) -> bool {
        self.incidence[v].iter().all(|&idx| {
            let cells: Vec<(usize, usize)> =
                self.h.arcs()[idx].vertices().iter().filter_map(|w| self.cell[w.index()]).collect();
            cells.iter().all(|c| c.0 == cells[0].0) || cells.iter().all(|c| c.1 == cells[0].1)
        })
    }

    fn extend(&mut self, depth: usize) -> Option<(DirectedHypergraph, DirectedHypergraph)> {
        if depth == self.order.len() {
            return self.read_factors();
        }
        let v = self.order[depth];
        for slot in 0..self.rows * self.cols {
            if self.taken[slot] {
                continue;
            }
            self.cell[v] = Some((slot / self.cols, slot % self.cols));
            self.taken[slot] = true;
            if self.arcs_aligned(v) {
                if let Some(found) = self.extend(depth + 1) {
                    return Some(found);
                }
            }
            self.taken[slot] = false;
            self.cell[v] = None;
        }
        None
    }

    /// Rows must all project to one arc set, and so must columns.
    fn read_factors(&self) -> Option<(DirectedHypergraph, DirectedHypergraph)> {
        let mut by_row: Vec<BTreeSet<Hyperarc>> = vec![BTreeSet::new(); self.rows];
        let mut by_col: Vec<BTreeSet<Hyperarc>> = vec![BTreeSet::new(); self.cols];
        for e in self.h.arcs() {
            let at = |v: VertexId| self.cell[v.index()].unwrap();
            let first = at(e.vertices()[0]);
            if e.vertices().iter().all(|&v| at(v).0 == first.0) {
                by_row[first.0].insert(e.map(|v| VertexId(at(v).1 as u32)));
            } else {
                by_col[first.1].insert(e.map(|v| VertexId(at(v).0 as u32)));
            }
        }
        if by_row.iter().any(|s| *s != by_row[0]) || by_col.iter().any(|s| *s != by_col[0]) {
            return None;
        }
        let build = |size: usize, arcs: &BTreeSet<Hyperarc>| {
            let names = (1..=size).map(|i| i.to_string()).collect();
            DirectedHypergraph::new(names, arcs.iter().cloned().collect()).expect("projected arcs are valid")
        };
        Some((build(self.rows, &by_col[0]), build(self.cols, &by_row[0])))
    }
}

/// Equality of factor multisets up to isomorphism and order.
pub fn same_factors(a: &[DirectedHypergraph], b: &[DirectedHypergraph]) -> Result<bool, BudgetExceeded> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let key = |h: &DirectedHypergraph| (h.n(), h.m());
    let mut left: Vec<&DirectedHypergraph> = a.iter().collect();
    let mut right: Vec<Option<&DirectedHypergraph>> = b.iter().map(Some).collect();
    left.sort_by_key(|h| key(h));
    'outer: for x in left {
        for slot in right.iter_mut() {
            if let Some(y) = slot {
                if key(y) == key(x) && isomorphic(x, y)?.is_some() {
                    *slot = None;
                    continue 'outer;
                }
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// [`same_factors`] for graphs.
pub fn same_graph_factors(a: &[UndirectedGraph], b: &[UndirectedGraph]) -> Result<bool, BudgetExceeded> {
    let a: Vec<_> = a.iter().map(UndirectedGraph::to_hypergraph).collect();
    let b: Vec<_> = b.iter().map(UndirectedGraph::to_hypergraph).collect();
    same_factors(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::graph_product;
    use crate::hypergraph::cartesian_product;

    #[test]
    fn graph_oracle_basics() {
        let c4 = brute_force_pfd_graph(&UndirectedGraph::cycle(4)).unwrap();
        assert_eq!(c4.len(), 2);
        assert!(c4.iter().all(|f| *f == UndirectedGraph::complete(2)));
        assert_eq!(brute_force_pfd_graph(&UndirectedGraph::complete(4)).unwrap().len(), 1);
        assert_eq!(brute_force_pfd_graph(&UndirectedGraph::path(3)).unwrap().len(), 1);
        assert_eq!(brute_force_pfd_graph(&UndirectedGraph::hypercube(3)).unwrap().len(), 3);
        let prism = graph_product(&UndirectedGraph::complete(3), &UndirectedGraph::complete(2));
        let f = brute_force_pfd_graph(&prism).unwrap();
        assert!(same_graph_factors(&f, &[UndirectedGraph::complete(2), UndirectedGraph::complete(3)]).unwrap());
    }

    /// The 4-vertex product of two single arcs, enumerated by hand: the
    /// only 2×2 placements keeping all four arcs axis-aligned put the
    /// sources of both arc families on one corner.
    #[test]
    fn single_arc_square_splits() {
        let a = fixtures::single_arc();
        let h = cartesian_product(&a, &a);
        let f = brute_force_pfd_hypergraph(&h).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|x| isomorphic(x, &a).unwrap().is_some()));
    }

    #[test]
    fn fixtures_under_the_oracle() {
        let f1 = brute_force_pfd_hypergraph(&fixtures::fig1()).unwrap();
        assert_eq!(f1.len(), 1);
        assert!(brute_force_pfd_hypergraph(&fixtures::k1()).unwrap().is_empty());
        assert!(matches!(
            brute_force_pfd_hypergraph(&fixtures::fig2()),
            Err(OracleError::CapExceeded { n: 16, cap: 8 })
        ));
    }

    #[test]
    fn prime_vertex_counts_are_prime() {
        let h = DirectedHypergraph::numbered(5, &[(&[0], &[1, 2]), (&[2, 3], &[4])]).unwrap();
        assert_eq!(brute_force_pfd_hypergraph(&h).unwrap().len(), 1);
        assert!(is_prime(&h).unwrap());
    }

    #[test]
    fn multiset_comparison_ignores_order() {
        let a = [fixtures::m2(), fixtures::single_arc()];
        let b = [fixtures::single_arc(), fixtures::m2()];
        assert!(same_factors(&a, &b).unwrap());
        assert!(!same_factors(&a, &[fixtures::m2(), fixtures::m2()]).unwrap());
        assert!(!same_factors(&a, &a[..1]).unwrap());
    }
}
