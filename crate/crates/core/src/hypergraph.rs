//! Directed hypergraphs: vertices with display names, hyperarcs as ordered
//! pairs of vertex sets, validation, weak connectivity, and the Cartesian
//! product.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::union_find::UnionFind;

/// Dense index of a vertex inside one hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A hyperarc `(tail, head)`. Both sides are kept sorted and free of
/// duplicates, so two arcs are equal exactly when their sequences are.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperarc {
    tail: Vec<VertexId>,
    head: Vec<VertexId>,
}

impl Hyperarc {
    pub fn new(tail: impl IntoIterator<Item = VertexId>, head: impl IntoIterator<Item = VertexId>) -> Self {
        let mut tail: Vec<_> = tail.into_iter().collect();
        let mut head: Vec<_> = head.into_iter().collect();
        tail.sort_unstable();
        tail.dedup();
        head.sort_unstable();
        head.dedup();
        Hyperarc { tail, head }
    }

    /// An undirected hyperedge, stored with `tail == head`.
    pub fn undirected(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let set: Vec<_> = vertices.into_iter().collect();
        Hyperarc::new(set.clone(), set)
    }

    pub fn tail(&self) -> &[VertexId] {
        &self.tail
    }

    pub fn head(&self) -> &[VertexId] {
        &self.head
    }

    pub fn is_undirected(&self) -> bool {
        self.tail == self.head
    }

    /// `V(e) = t(e) ∪ h(e)`, sorted.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.tail.len() + self.head.len());
        let (mut i, mut j) = (0, 0);
        while i < self.tail.len() || j < self.head.len() {
            let next = match (self.tail.get(i), self.head.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(_), Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        out
    }

    /// `|V(e)|`.
    pub fn size(&self) -> usize {
        self.vertices().len()
    }

    /// Apply a vertex map to both sides, re-sorting the result.
    pub fn map(&self, mut f: impl FnMut(VertexId) -> VertexId) -> Hyperarc {
        let tail: Vec<_> = self.tail.iter().map(|&v| f(v)).collect();
        let head: Vec<_> = self.head.iter().map(|&v| f(v)).collect();
        Hyperarc::new(tail, head)
    }
}

/// One reason a vertex table plus arc list is not a valid hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    DuplicateName { name: String },
    EmptyTail { arc: usize },
    EmptyHead { arc: usize },
    Loop { arc: usize },
    MultiArc { arc: usize, first: usize },
    DanglingVertex { arc: usize, vertex: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "hypergraph has no vertices"),
            Violation::DuplicateName { name } => write!(f, "vertex name `{name}` used twice"),
            Violation::EmptyTail { arc } => write!(f, "arc {arc}: empty tail"),
            Violation::EmptyHead { arc } => write!(f, "arc {arc}: empty head"),
            Violation::Loop { arc } => write!(f, "arc {arc}: loop (fewer than two distinct vertices)"),
            Violation::MultiArc { arc, first } => write!(f, "arc {arc}: duplicate of arc {first}"),
            Violation::DanglingVertex { arc, vertex } => {
                write!(f, "arc {arc}: references unknown vertex {vertex}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid hypergraph: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

/// Check the hypergraph invariants on raw parts: non-empty vertex table,
/// unique names, non-empty sides, no loops, no multi-arcs, no dangling ids.
pub fn validate(names: &[String], arcs: &[Hyperarc]) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    if names.is_empty() {
        violations.push(Violation::NoVertices);
    }
    let mut seen_names = HashSet::with_capacity(names.len());
    for name in names {
        if !seen_names.insert(name.as_str()) {
            violations.push(Violation::DuplicateName { name: name.clone() });
        }
    }
    let n = names.len();
    let mut seen_arcs: HashMap<&Hyperarc, usize> = HashMap::with_capacity(arcs.len());
    for (idx, arc) in arcs.iter().enumerate() {
        if arc.tail.is_empty() {
            violations.push(Violation::EmptyTail { arc: idx });
        }
        if arc.head.is_empty() {
            violations.push(Violation::EmptyHead { arc: idx });
        }
        if !arc.tail.is_empty() && !arc.head.is_empty() && arc.size() < 2 {
            violations.push(Violation::Loop { arc: idx });
        }
        if let Some(&v) = arc.tail.iter().chain(&arc.head).find(|v| v.index() >= n) {
            violations.push(Violation::DanglingVertex { arc: idx, vertex: v });
        }
        if let Some(&first) = seen_arcs.get(arc) {
            violations.push(Violation::MultiArc { arc: idx, first });
        } else {
            seen_arcs.insert(arc, idx);
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A finite directed hypergraph without loops or multi-arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedHypergraph {
    names: Vec<String>,
    arcs: Vec<Hyperarc>,
    rank: usize,
}

impl DirectedHypergraph {
    pub fn new(names: Vec<String>, arcs: Vec<Hyperarc>) -> Result<Self, ValidationError> {
        validate(&names, &arcs).map_err(|violations| ValidationError { violations })?;
        let rank = arcs.iter().map(Hyperarc::size).max().unwrap_or(0);
        Ok(DirectedHypergraph { names, arcs, rank })
    }

    /// Vertices named `1..=n`; arcs given as 0-based index lists.
    pub fn numbered(n: usize, arcs: &[(&[u32], &[u32])]) -> Result<Self, ValidationError> {
        let names = (1..=n).map(|i| i.to_string()).collect();
        let arcs = arcs
            .iter()
            .map(|(t, h)| Hyperarc::new(t.iter().map(|&v| VertexId(v)), h.iter().map(|&v| VertexId(v))))
            .collect();
        DirectedHypergraph::new(names, arcs)
    }

    /// The one-vertex unit `K1`.
    pub fn unit(name: impl Into<String>) -> Self {
        DirectedHypergraph { names: vec![name.into()], arcs: Vec::new(), rank: 0 }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// `max |V(e)|`; zero when there are no arcs.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn arcs(&self) -> &[Hyperarc] {
        &self.arcs
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId::from)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(VertexId::from)
    }

    /// Position of an arc equal to `arc`, if any.
    pub fn find_arc(&self, arc: &Hyperarc) -> Option<usize> {
        self.arcs.iter().position(|a| a == arc)
    }

    /// Weak connectivity over the vertex–arc incidence structure.
    pub fn is_connected(&self) -> bool {
        self.weak_components() <= 1
    }

    /// Number of weak components.
    pub fn weak_components(&self) -> usize {
        let mut uf = UnionFind::new(self.n());
        for arc in &self.arcs {
            let mut it = arc.tail.iter().chain(&arc.head);
            if let Some(&first) = it.next() {
                for &v in it {
                    uf.union(first.index(), v.index());
                }
            }
        }
        uf.count()
    }

    /// For every vertex, the indices of the arcs containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n()];
        for (idx, arc) in self.arcs.iter().enumerate() {
            for v in arc.vertices() {
                inc[v.index()].push(idx);
            }
        }
        inc
    }

    /// Sub-hypergraph induced by `keep`: vertices in the given order, arcs
    /// with `V(e) ⊆ keep`. Also returns the map from new ids to old ids.
    pub fn induced(&self, keep: &[VertexId]) -> (DirectedHypergraph, Vec<VertexId>) {
        let mut new_id = vec![u32::MAX; self.n()];
        for (i, v) in keep.iter().enumerate() {
            new_id[v.index()] = i as u32;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|a| a.tail.iter().chain(&a.head).all(|v| new_id[v.index()] != u32::MAX))
            .map(|a| a.map(|v| VertexId(new_id[v.index()])))
            .collect::<Vec<_>>();
        let names = keep.iter().map(|&v| self.names[v.index()].clone()).collect();
        let rank = arcs.iter().map(Hyperarc::size).max().unwrap_or(0);
        (DirectedHypergraph { names, arcs, rank }, keep.to_vec())
    }

    /// Rebuild with vertices listed in `order` (new id `i` is old
    /// `order[i]`) and the given replacement names. Arc order follows
    /// `arc_order` when given.
    pub fn relabeled(
        &self,
        order: &[VertexId],
        names: Vec<String>,
        arc_order: Option<&[usize]>,
    ) -> Result<DirectedHypergraph, ValidationError> {
        assert_eq!(order.len(), self.n(), "relabel order must be a permutation");
        let mut new_id = vec![VertexId(0); self.n()];
        for (i, v) in order.iter().enumerate() {
            new_id[v.index()] = VertexId(i as u32);
        }
        let idx: Vec<usize> = match arc_order {
            Some(o) => o.to_vec(),
            None => (0..self.m()).collect(),
        };
        let arcs = idx.iter().map(|&i| self.arcs[i].map(|v| new_id[v.index()])).collect();
        DirectedHypergraph::new(names, arcs)
    }

    /// Same structure with different display names.
    pub fn renamed(&self, names: Vec<String>) -> Result<DirectedHypergraph, ValidationError> {
        DirectedHypergraph::new(names, self.arcs.clone())
    }
}

/// Incremental construction by vertex name.
#[derive(Default, Debug)]
pub struct HypergraphBuilder {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    arcs: Vec<Hyperarc>,
}

impl HypergraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id for `name`, registering it on first use.
    pub fn vertex(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = VertexId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), v);
        v
    }

    pub fn arc<S: AsRef<str>>(&mut self, tail: &[S], head: &[S]) -> &mut Self {
        let t: Vec<_> = tail.iter().map(|s| self.vertex(s.as_ref())).collect();
        let h: Vec<_> = head.iter().map(|s| self.vertex(s.as_ref())).collect();
        self.arcs.push(Hyperarc::new(t, h));
        self
    }

    pub fn undirected<S: AsRef<str>>(&mut self, vertices: &[S]) -> &mut Self {
        self.arc(vertices, vertices)
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn build(self) -> Result<DirectedHypergraph, ValidationError> {
        DirectedHypergraph::new(self.names, self.arcs)
    }
}

/// `H1 □ H2`. Vertex `(x, y)` gets id `x * |V(H2)| + y` and name `x|y`.
pub fn cartesian_product(h1: &DirectedHypergraph, h2: &DirectedHypergraph) -> DirectedHypergraph {
    let n2 = h2.n() as u32;
    let pair = |x: VertexId, y: VertexId| VertexId(x.0 * n2 + y.0);
    let mut names = Vec::with_capacity(h1.n() * h2.n());
    for a in &h1.names {
        for b in &h2.names {
            names.push(format!("{a}|{b}"));
        }
    }
    let mut arcs = Vec::with_capacity(h1.m() * h2.n() + h1.n() * h2.m());
    for x in h1.vertices() {
        for f in &h2.arcs {
            arcs.push(f.map(|y| pair(x, y)));
        }
    }
    for e in &h1.arcs {
        for y in h2.vertices() {
            arcs.push(e.map(|x| pair(x, y)));
        }
    }
    // The two families are disjoint for loop-free inputs; dedup keeps set
    // semantics regardless.
    let mut seen = HashSet::with_capacity(arcs.len());
    arcs.retain(|a| seen.insert(a.clone()));
    let rank = h1.rank.max(h2.rank);
    DirectedHypergraph { names, arcs, rank }
}

/// Left fold of [`cartesian_product`]; the product of nothing is `K1`.
pub fn product_of(factors: &[DirectedHypergraph]) -> DirectedHypergraph {
    let mut iter = factors.iter();
    match iter.next() {
        None => DirectedHypergraph::unit("1"),
        Some(first) => iter.fold(first.clone(), |acc, h| cartesian_product(&acc, h)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn loop_is_rejected() {
        let err = DirectedHypergraph::numbered(1, &[(&[0], &[0])]).unwrap_err();
        assert_eq!(err.violations, vec![Violation::Loop { arc: 0 }]);
    }

    #[test]
    fn multi_arc_is_rejected() {
        let err = DirectedHypergraph::numbered(2, &[(&[0], &[1]), (&[0], &[1])]).unwrap_err();
        assert_eq!(err.violations, vec![Violation::MultiArc { arc: 1, first: 0 }]);
    }

    #[test]
    fn empty_sides_and_dangling_ids_are_reported_by_arc() {
        let arcs = vec![Hyperarc::new([], [v(0)]), Hyperarc::new([v(0)], []), Hyperarc::new([v(0)], [v(7)])];
        let errs = validate(&["a".into(), "b".into()], &arcs).unwrap_err();
        assert!(errs.contains(&Violation::EmptyTail { arc: 0 }));
        assert!(errs.contains(&Violation::EmptyHead { arc: 1 }));
        assert!(errs.contains(&Violation::DanglingVertex { arc: 2, vertex: v(7) }));
    }

    #[test]
    fn duplicate_names_and_empty_tables_are_rejected() {
        let errs = validate(&["a".into(), "a".into()], &[]).unwrap_err();
        assert_eq!(errs, vec![Violation::DuplicateName { name: "a".into() }]);
        assert_eq!(validate(&[], &[]).unwrap_err(), vec![Violation::NoVertices]);
    }

    #[test]
    fn fig1_is_valid_and_connected() {
        let h = fixtures::fig1();
        assert_eq!((h.n(), h.m(), h.rank()), (8, 8, 4));
        assert!(h.is_connected());
    }

    #[test]
    fn connectivity_edge_cases() {
        assert!(DirectedHypergraph::unit("x").is_connected());
        let h = DirectedHypergraph::numbered(4, &[(&[0], &[1]), (&[2], &[3])]).unwrap();
        assert!(!h.is_connected());
        assert_eq!(h.weak_components(), 2);
    }

    #[test]
    fn vertices_of_an_arc_are_the_sorted_union() {
        let a = Hyperarc::new([v(3), v(1)], [v(2), v(3)]);
        assert_eq!(a.vertices(), vec![v(1), v(2), v(3)]);
        assert_eq!(a.size(), 3);
        assert!(!a.is_undirected());
        assert!(Hyperarc::undirected([v(1), v(0)]).is_undirected());
    }

    #[test]
    fn unit_is_neutral_for_the_product() {
        let h = fixtures::fig1();
        let k1 = DirectedHypergraph::unit("*");
        for p in [cartesian_product(&h, &k1), cartesian_product(&k1, &h)] {
            assert_eq!(p.n(), h.n());
            assert_eq!(p.arcs(), h.arcs());
        }
    }

    #[test]
    fn fixture_products_have_the_expected_sizes() {
        let p = cartesian_product(&fixtures::fig1(), &fixtures::m2());
        assert_eq!(p.n(), 16);
        assert_eq!(p.m(), 8 * 2 + 8);
        assert!(p.is_connected());
        assert_eq!(p.name(VertexId(3)), "12|2");
    }

    #[test]
    fn induced_keeps_only_contained_arcs() {
        let h = fixtures::fig1();
        let keep: Vec<_> = ["11", "12", "13", "14"].iter().map(|s| h.vertex_by_name(s).unwrap()).collect();
        let (sub, back) = h.induced(&keep);
        assert_eq!(sub.n(), 4);
        // e1 and e3
        assert_eq!(sub.m(), 2);
        assert_eq!(back, keep);
    }
}
