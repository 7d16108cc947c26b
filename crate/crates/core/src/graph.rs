//! Simple undirected graphs in compressed adjacency form, the graph
//! Cartesian product, and the 2-section of a hypergraph.

use std::collections::VecDeque;

use crate::hypergraph::{DirectedHypergraph, Hyperarc, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("edge endpoint {0} out of range for {1} vertices")]
    OutOfRange(u32, usize),
}

/// Undirected simple graph on `0..n`. Edges are numbered in lexicographic
/// order of `(min, max)`; neighbor lists are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    half_edge_ids: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl UndirectedGraph {
    /// Parallel edges collapse; loops are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::OutOfRange(u.max(v), n));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; 2 * edges.len()];
        let mut half_edge_ids = vec![0u32; 2 * edges.len()];
        // Lexicographic edge order already yields ascending neighbor lists:
        // every (w, x) with w < x precedes every (x, y).
        for (id, &(u, v)) in edges.iter().enumerate() {
            neighbors[fill[u as usize]] = v;
            half_edge_ids[fill[u as usize]] = id as u32;
            fill[u as usize] += 1;
            neighbors[fill[v as usize]] = u;
            half_edge_ids[fill[v as usize]] = id as u32;
            fill[v as usize] += 1;
        }
        UndirectedGraph { offsets, neighbors, half_edge_ids, edges }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        Self::from_sorted_unique(n, edges)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n as u32).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n as u32).map(|v| (v, (v + 1) % n as u32))).expect("cycle edges are valid")
    }

    /// `Q_d` on `0..2^d`, edges between ids differing in one bit.
    pub fn hypercube(d: u32) -> Self {
        let n = 1u32 << d;
        let edges = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v);
        Self::from_edges(n as usize, edges).expect("hypercube edges are valid")
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `(neighbor, edge id)` pairs around `v`, neighbors ascending.
    pub fn incident(&self, v: u32) -> impl Iterator<Item = (u32, usize)> + '_ {
        let range = self.offsets[v as usize]..self.offsets[v as usize + 1];
        self.neighbors[range.clone()].iter().copied().zip(self.half_edge_ids[range].iter().map(|&e| e as usize))
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (u32, u32) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: u32, v: u32) -> Option<usize> {
        let start = self.offsets[u as usize];
        self.neighbors(u).binary_search(&v).ok().map(|i| self.half_edge_ids[start + i] as usize)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.bfs_order(0).len() == self.n()
    }

    /// Vertices reachable from `root`, in breadth-first order.
    pub fn bfs_order(&self, root: u32) -> Vec<u32> {
        let mut seen = vec![false; self.n()];
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        seen[root as usize] = true;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Single-source distances (`u32::MAX` when unreachable).
    pub fn distances_from(&self, root: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut queue = VecDeque::from([root]);
        dist[root as usize] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// View as a hypergraph whose arcs are 2-element undirected hyperedges.
    pub fn to_hypergraph(&self) -> DirectedHypergraph {
        let names = (1..=self.n()).map(|i| i.to_string()).collect();
        let arcs = self.edges.iter().map(|&(u, v)| Hyperarc::undirected([VertexId(u), VertexId(v)])).collect();
        DirectedHypergraph::new(names, arcs).expect("simple graph is a valid hypergraph")
    }

    /// `"n m|u-v,u-v,..."`, used as the final tie-break when ordering factors.
    pub fn canonical_string(&self) -> String {
        let body: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{} {}|{}", self.n(), self.m(), body.join(","))
    }
}

/// `G1 □ G2` with vertex `(x, y)` at index `x * |V(G2)| + y`.
pub fn graph_product(g1: &UndirectedGraph, g2: &UndirectedGraph) -> UndirectedGraph {
    let n2 = g2.n() as u32;
    let mut edges = Vec::with_capacity(g1.m() * g2.n() + g1.n() * g2.m());
    for x in 0..g1.n() as u32 {
        for &(a, b) in g2.edges() {
            edges.push((x * n2 + a, x * n2 + b));
        }
    }
    for &(a, b) in g1.edges() {
        for y in 0..n2 {
            edges.push((a * n2 + y, b * n2 + y));
        }
    }
    UndirectedGraph::from_edges(g1.n() * g2.n(), edges).expect("product of simple graphs is simple")
}

/// `[H]_2`: `xy` is an edge iff `x ≠ y` lie in a common arc.
pub fn two_section(h: &DirectedHypergraph) -> UndirectedGraph {
    let mut edges = Vec::new();
    for arc in h.arcs() {
        let vs = arc.vertices();
        for (i, &x) in vs.iter().enumerate() {
            for &y in &vs[i + 1..] {
                edges.push((x.0, y.0));
            }
        }
    }
    UndirectedGraph::from_edges(h.n(), edges).expect("arcs of a valid hypergraph have distinct ids")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = UndirectedGraph::from_edges(5, [(4, 0), (2, 1), (0, 2), (3, 2), (2, 0)]).unwrap();
        assert_eq!(g.m(), 4);
        for v in 0..5 {
            let ns = g.neighbors(v);
            assert!(ns.windows(2).all(|w| w[0] < w[1]));
            for &w in ns {
                assert!(g.has_edge(w, v));
                assert_eq!(g.edge_id(v, w), g.edge_id(w, v));
            }
        }
        assert_eq!(g.edges(), &[(0, 2), (0, 4), (1, 2), (2, 3)]);
    }

    #[test]
    fn loops_are_rejected() {
        assert_eq!(UndirectedGraph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(UndirectedGraph::from_edges(2, [(0, 2)]), Err(GraphError::OutOfRange(2, 2))));
    }

    #[test]
    fn single_arc_section_is_a_triangle() {
        let h = DirectedHypergraph::numbered(3, &[(&[0], &[1, 2])]).unwrap();
        let g = two_section(&h);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn fig1_section_has_sixteen_edges() {
        let g = two_section(&fixtures::fig1());
        assert_eq!(g.m(), 16);
        assert!(g.neighbors(0).len() == 4);
    }

    #[test]
    fn standard_families() {
        assert_eq!(UndirectedGraph::hypercube(3).m(), 12);
        assert_eq!(UndirectedGraph::complete(4).m(), 6);
        assert_eq!(UndirectedGraph::cycle(5).m(), 5);
        assert_eq!(graph_product(&UndirectedGraph::complete(2), &UndirectedGraph::complete(2)).m(), 4);
        assert!(!UndirectedGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap().is_connected());
    }
}
