//! Cartesian prime factor decomposition of connected undirected graphs.
//!
//! The finest product relation is approached from below. Edges are first
//! related by the local square rules (adjacent edges on a triangle or in no
//! chordless square, opposite edges of chordless squares), which never
//! relate edges of different prime factors. The resulting classes can be
//! finer than the prime factors; they are merged along witnesses of
//! non-product structure until the coloring passes the full product check
//! of [`coordinates_from_coloring`]. If those witnesses run out before the
//! check passes, the classes are recomputed from the closure of the
//! Djoković–Winkler relation together with the no-square relation, which
//! equals the finest product relation of a connected graph.

use std::collections::{HashSet, VecDeque};

use crate::coords::{CoordError, Coordinatization};
use crate::graph::UndirectedGraph;
use crate::hypergraph::VertexId;
use crate::union_find::UnionFind;

/// One color per edge (indexed like [`UndirectedGraph::edges`]), using the
/// contiguous range `0..count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<u32>,
    count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("colors are not contiguous: {0} is unused")]
pub struct NonContiguousColors(pub u32);

impl EdgeColoring {
    pub fn new(colors: Vec<u32>) -> Result<Self, NonContiguousColors> {
        let count = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut used = vec![false; count as usize];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(gap) = used.iter().position(|u| !u) {
            return Err(NonContiguousColors(gap as u32));
        }
        Ok(EdgeColoring { colors, count })
    }

    /// Renumber arbitrary labels densely, in order of first appearance.
    pub fn from_labels(labels: &[u32]) -> Self {
        let mut dense = std::collections::HashMap::new();
        let colors = labels
            .iter()
            .map(|l| {
                let next = dense.len() as u32;
                *dense.entry(*l).or_insert(next)
            })
            .collect();
        EdgeColoring { colors, count: dense.len() as u32 }
    }

    /// Every edge the same color.
    pub fn uniform(m: usize) -> Self {
        EdgeColoring { colors: vec![0; m], count: (m > 0) as u32 }
    }

    pub fn count(&self) -> usize {
        self.count as usize
    }

    pub fn color(&self, edge: usize) -> u32 {
        self.colors[edge]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// Why a coloring is not a product relation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProductRelationError {
    #[error("coloring has {colors} entries for {edges} edges")]
    WrongLength { edges: usize, colors: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("root has no edge of color {0}")]
    RootMissesColor(u32),
    #[error("vertices {0} and {1} receive the same coordinates")]
    CoordinateClash(u32, u32),
    #[error("grid of {grid} cells does not match {vertices} vertices")]
    GridMismatch { grid: usize, vertices: usize },
    #[error("vertex {vertex} lies in a co-layer of color {color} that misses the root layer")]
    UncoveredCoLayer { color: u32, vertex: u32 },
    #[error("edge {u}-{v} of color {color} differs on axes {axes:?}")]
    NotAxisAligned { u: u32, v: u32, color: u32, axes: Vec<usize> },
    #[error("edge {u}-{v} of color {color} has no counterpart in the root layer")]
    LayerMismatch { u: u32, v: u32, color: u32 },
    #[error("color {color} has {found} edges, a product needs {expected}")]
    EdgeCountMismatch { color: u32, found: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphPfdError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("internal inconsistency: {0}")]
    Inconsistent(ProductRelationError),
}

/// Prime factors, the coordinatization realizing `G ≅ □ factors`, and the
/// product coloring (edge color = the axis along which it runs).
#[derive(Clone, Debug)]
pub struct GraphFactorization {
    pub factors: Vec<UndirectedGraph>,
    pub coordinates: Coordinatization,
    pub coloring: EdgeColoring,
}

impl GraphFactorization {
    pub fn k(&self) -> usize {
        self.factors.len()
    }
}

/// Breadth-first coordinates from a product coloring, rooted at vertex 0.
///
/// Coordinate `c` of `v` identifies the component of `v` after deleting all
/// color-`c` edges; components are numbered by the vertex where they meet
/// the color-`c` layer through the root, in ascending id order. The root
/// gets the all-ones vector and an edge of color `c` changes only
/// coordinate `c`. The result is checked against the full product
/// structure: bijectivity onto the grid and every color class being a
/// copy of the root layer's edges in every layer.
pub fn coordinates_from_coloring(
    g: &UndirectedGraph,
    coloring: &EdgeColoring,
) -> Result<Coordinatization, ProductRelationError> {
    let n = g.n();
    if coloring.len() != g.m() {
        return Err(ProductRelationError::WrongLength { edges: g.m(), colors: coloring.len() });
    }
    if n == 0 || !g.is_connected() {
        return Err(ProductRelationError::Disconnected);
    }
    if n == 1 {
        return Ok(Coordinatization::trivial());
    }
    let k = coloring.count();
    let root = 0u32;
    let mut coords = vec![vec![0u32; k]; n];
    let mut sizes = Vec::with_capacity(k);
    for c in 0..k as u32 {
        let co = co_layer_labels(g, coloring, c);
        let layer = color_layer(g, coloring, c, root);
        if layer.len() < 2 {
            return Err(ProductRelationError::RootMissesColor(c));
        }
        let mut value = vec![0u32; n];
        let mut owner = vec![u32::MAX; n];
        for (i, &x) in layer.iter().enumerate() {
            let label = co[x as usize] as usize;
            if owner[label] != u32::MAX {
                return Err(ProductRelationError::CoordinateClash(owner[label], x));
            }
            owner[label] = x;
            value[label] = i as u32 + 1;
        }
        for v in 0..n {
            let val = value[co[v] as usize];
            if val == 0 {
                return Err(ProductRelationError::UncoveredCoLayer { color: c, vertex: v as u32 });
            }
            coords[v][c as usize] = val;
        }
        sizes.push(layer.len() as u32);
    }
    let coordinates = Coordinatization::new(sizes, coords).map_err(|e| match e {
        CoordError::Clash(a, b) => ProductRelationError::CoordinateClash(a.0, b.0),
        CoordError::SizeMismatch { grid, vertices } => ProductRelationError::GridMismatch { grid, vertices },
        other => unreachable!("coordinates are in range by construction: {other}"),
    })?;
    check_layers(g, coloring, &coordinates)?;
    Ok(coordinates)
}

/// Every edge runs along its own axis, and each color class is the root
/// layer's edge set copied into every layer.
fn check_layers(g: &UndirectedGraph, coloring: &EdgeColoring, c: &Coordinatization) -> Result<(), ProductRelationError> {
    let k = coloring.count();
    let root = VertexId(0);
    let mut factor_edges: Vec<HashSet<(u32, u32)>> = vec![HashSet::new(); k];
    let mut counts = vec![0usize; k];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let color = coloring.color(id);
        let axes = c.differing_axes(VertexId(u), VertexId(v));
        if axes != [color as usize] {
            return Err(ProductRelationError::NotAxisAligned { u, v, color, axes });
        }
        counts[color as usize] += 1;
        let on_root_layer = (0..k).filter(|&a| a != color as usize).all(|a| {
            c.coordinate(VertexId(u), a) == c.coordinate(root, a)
        });
        if on_root_layer {
            factor_edges[color as usize].insert(value_pair(c, u, v, color));
        }
    }
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let color = coloring.color(id);
        if !factor_edges[color as usize].contains(&value_pair(c, u, v, color)) {
            return Err(ProductRelationError::LayerMismatch { u, v, color });
        }
    }
    for color in 0..k {
        let layers = c.n() / c.sizes()[color] as usize;
        let expected = factor_edges[color].len() * layers;
        if counts[color] != expected {
            return Err(ProductRelationError::EdgeCountMismatch { color: color as u32, found: counts[color], expected });
        }
    }
    Ok(())
}

fn value_pair(c: &Coordinatization, u: u32, v: u32, color: u32) -> (u32, u32) {
    let a = c.coordinate(VertexId(u), color as usize);
    let b = c.coordinate(VertexId(v), color as usize);
    (a.min(b), a.max(b))
}

/// Component labels of the graph without color-`c` edges.
fn co_layer_labels(g: &UndirectedGraph, coloring: &EdgeColoring, c: u32) -> Vec<u32> {
    let mut uf = UnionFind::new(g.n());
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if coloring.color(id) != c {
            uf.union(u as usize, v as usize);
        }
    }
    uf.labels()
}

/// Component labels of the color-`c` edges alone.
fn layer_labels(g: &UndirectedGraph, coloring: &EdgeColoring, c: u32) -> Vec<u32> {
    let mut uf = UnionFind::new(g.n());
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if coloring.color(id) == c {
            uf.union(u as usize, v as usize);
        }
    }
    uf.labels()
}

/// Vertices of the color-`c` layer through `root`, ascending.
fn color_layer(g: &UndirectedGraph, coloring: &EdgeColoring, c: u32, root: u32) -> Vec<u32> {
    let mut seen = vec![false; g.n()];
    let mut out = vec![root];
    let mut queue = VecDeque::from([root]);
    seen[root as usize] = true;
    while let Some(u) = queue.pop_front() {
        for (w, e) in g.incident(u) {
            if coloring.color(e) == c && !seen[w as usize] {
                seen[w as usize] = true;
                out.push(w);
                queue.push_back(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Prime factor decomposition of a connected graph.
pub fn pfd_graph(g: &UndirectedGraph) -> Result<GraphFactorization, GraphPfdError> {
    if g.n() == 0 {
        return Err(GraphPfdError::Empty);
    }
    if !g.is_connected() {
        return Err(GraphPfdError::Disconnected);
    }
    if g.n() == 1 {
        return Ok(GraphFactorization {
            factors: Vec::new(),
            coordinates: Coordinatization::trivial(),
            coloring: EdgeColoring::uniform(0),
        });
    }
    let mut labels = square_classes(g);
    let (coloring, coordinates) = loop {
        let coloring = root_ordered_coloring(g, &labels);
        if let Some(merges) = noncommuting_witnesses(g, &coloring) {
            let mut uf = UnionFind::new(coloring.count());
            for (a, b) in merges {
                uf.union(a as usize, b as usize);
            }
            labels = coloring.colors().iter().map(|&c| uf.find(c as usize) as u32).collect();
            continue;
        }
        match coordinates_from_coloring(g, &coloring) {
            Ok(coords) => break (coloring, coords),
            Err(_) => {
                let exact = root_ordered_coloring(g, &theta_tau_classes(g));
                let coords = coordinates_from_coloring(g, &exact).map_err(GraphPfdError::Inconsistent)?;
                break (exact, coords);
            }
        }
    };
    Ok(order_factors(g, coloring, coordinates))
}

/// Renumber classes: first those at the root in ascending neighbor order,
/// then any remaining ones by smallest edge id.
fn root_ordered_coloring(g: &UndirectedGraph, labels: &[u32]) -> EdgeColoring {
    let mut order: Vec<u32> = Vec::new();
    let mut seen = HashSet::new();
    for (_, e) in g.incident(0) {
        if seen.insert(labels[e]) {
            order.push(labels[e]);
        }
    }
    for &l in labels {
        if seen.insert(l) {
            order.push(l);
        }
    }
    let mut rename = std::collections::HashMap::with_capacity(order.len());
    for (i, l) in order.into_iter().enumerate() {
        rename.insert(l, i as u32);
    }
    EdgeColoring { colors: labels.iter().map(|l| rename[l]).collect(), count: rename.len() as u32 }
}

/// Local square rules, closed transitively. Labels are union-find roots.
///
/// Chordless squares through `u` are enumerated by walking two steps from
/// `u`: every far corner `x` collects the neighbors of `u` it was reached
/// from, and each pair of those spans a square.
fn square_classes(g: &UndirectedGraph) -> Vec<u32> {
    let n = g.n();
    let mut uf = UnionFind::new(g.m());
    let mut pos = vec![u32::MAX; n];
    let mut hits: Vec<Vec<(u32, usize)>> = vec![Vec::new(); n];
    let mut touched: Vec<u32> = Vec::new();
    let mut adjacent = BitMatrix::default();
    let mut squared = BitMatrix::default();
    for u in 0..n as u32 {
        let around: Vec<(u32, usize)> = g.incident(u).collect();
        let d = around.len();
        for (i, &(v, _)) in around.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        adjacent.reset(d);
        squared.reset(d);
        for (i, &(v, _)) in around.iter().enumerate() {
            for (x, vx) in g.incident(v) {
                if x == u {
                    continue;
                }
                if pos[x as usize] != u32::MAX {
                    adjacent.set(i, pos[x as usize] as usize);
                    continue;
                }
                if hits[x as usize].is_empty() {
                    touched.push(x);
                }
                hits[x as usize].push((i as u32, vx));
            }
        }
        for &x in &touched {
            let list = &hits[x as usize];
            for (a, &(i, vx)) in list.iter().enumerate() {
                for &(j, wx) in &list[a + 1..] {
                    let (i, j) = (i as usize, j as usize);
                    if adjacent.get(i, j) {
                        continue;
                    }
                    squared.set(i, j);
                    uf.union(around[i].1, wx);
                    uf.union(around[j].1, vx);
                }
            }
            hits[x as usize].clear();
        }
        touched.clear();
        for i in 0..d {
            for j in i + 1..d {
                if adjacent.get(i, j) || !squared.get(i, j) {
                    uf.union(around[i].1, around[j].1);
                }
            }
        }
        for &(v, _) in &around {
            pos[v as usize] = u32::MAX;
        }
    }
    (0..g.m()).map(|e| uf.find(e) as u32).collect()
}

/// Symmetric `d × d` bit matrix, reused across vertices.
#[derive(Default)]
struct BitMatrix {
    d: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn reset(&mut self, d: usize) {
        self.d = d;
        self.bits.clear();
        self.bits.resize((d * d).div_ceil(64), 0);
    }

    fn set(&mut self, i: usize, j: usize) {
        for k in [i * self.d + j, j * self.d + i] {
            self.bits[k / 64] |= 1 << (k % 64);
        }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        let k = i * self.d + j;
        self.bits[k / 64] & (1 << (k % 64)) != 0
    }
}

/// Pairs of classes that must belong to the same prime factor.
///
/// If a color-`c` layer meets a co-layer of `c` (a component after deleting
/// color `c`) twice, at `x` and `y`, then `x` and `y` lie in one layer of
/// the prime factor containing `c`. Layers are convex, so every shortest
/// `x`–`y` path avoiding color `c` stays in that layer, and all its colors
/// belong to the same factor as `c`.
fn noncommuting_witnesses(g: &UndirectedGraph, coloring: &EdgeColoring) -> Option<Vec<(u32, u32)>> {
    let n = g.n();
    for c in 0..coloring.count() as u32 {
        let layers = layer_labels(g, coloring, c);
        let co = co_layer_labels(g, coloring, c);
        let mut first: std::collections::HashMap<(u32, u32), u32> = std::collections::HashMap::with_capacity(n);
        for v in 0..n as u32 {
            if let Some(&x) = first.get(&(layers[v as usize], co[v as usize])) {
                let path_colors = shortest_avoiding(g, coloring, c, x, v);
                let merges: Vec<(u32, u32)> = path_colors.into_iter().map(|d| (c, d)).collect();
                debug_assert!(!merges.is_empty());
                return Some(merges);
            }
            first.insert((layers[v as usize], co[v as usize]), v);
        }
    }
    None
}

/// Colors on one shortest `from`–`to` path that uses no color-`c` edge.
fn shortest_avoiding(g: &UndirectedGraph, coloring: &EdgeColoring, c: u32, from: u32, to: u32) -> Vec<u32> {
    let mut parent: Vec<Option<(u32, usize)>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[from as usize] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for (w, e) in g.incident(u) {
            if coloring.color(e) != c && !seen[w as usize] {
                seen[w as usize] = true;
                parent[w as usize] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    let mut colors = Vec::new();
    let mut at = to;
    while let Some((p, e)) = parent[at as usize] {
        colors.push(coloring.color(e));
        at = p;
    }
    colors.sort_unstable();
    colors.dedup();
    colors
}

/// Closure of the Djoković–Winkler relation together with the relation
/// "adjacent and in no chordless square". Quadratic in the edge count.
fn theta_tau_classes(g: &UndirectedGraph) -> Vec<u32> {
    let mut uf = UnionFind::new(g.m());
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        let dx = g.distances_from(x);
        let dy = g.distances_from(y);
        for (f, &(u, v)) in g.edges().iter().enumerate().skip(e + 1) {
            let (u, v) = (u as usize, v as usize);
            if dx[u] + dy[v] != dx[v] + dy[u] {
                uf.union(e, f);
            }
        }
    }
    for u in 0..g.n() as u32 {
        let around: Vec<(u32, usize)> = g.incident(u).collect();
        for (i, &(v, e1)) in around.iter().enumerate() {
            for &(w, e2) in &around[i + 1..] {
                let squared = g
                    .neighbors(v)
                    .iter()
                    .any(|&x| x != u && g.has_edge(w, x) && !g.has_edge(u, x) && !g.has_edge(v, w));
                if !squared {
                    uf.union(e1, e2);
                }
            }
        }
    }
    (0..g.m()).map(|e| uf.find(e) as u32).collect()
}

/// The graph on `0..l_c` formed by the color-`c` edges of the root layer.
fn factor_graph(g: &UndirectedGraph, coloring: &EdgeColoring, c: &Coordinatization, color: usize) -> UndirectedGraph {
    let root = VertexId(0);
    let edges = g.edges().iter().enumerate().filter_map(|(id, &(u, v))| {
        if coloring.color(id) as usize != color {
            return None;
        }
        let on_root = (0..c.k()).filter(|&a| a != color).all(|a| c.coordinate(VertexId(u), a) == c.coordinate(root, a));
        on_root.then(|| (c.coordinate(VertexId(u), color) - 1, c.coordinate(VertexId(v), color) - 1))
    });
    UndirectedGraph::from_edges(c.sizes()[color] as usize, edges).expect("factor edges join distinct values")
}

/// Sort factors by `(vertices, edges, canonical string)` and renumber the
/// axes and colors to match.
fn order_factors(g: &UndirectedGraph, coloring: EdgeColoring, coordinates: Coordinatization) -> GraphFactorization {
    let k = coloring.count();
    let factors: Vec<UndirectedGraph> = (0..k).map(|c| factor_graph(g, &coloring, &coordinates, c)).collect();
    let mut perm: Vec<usize> = (0..k).collect();
    perm.sort_by_cached_key(|&c| (factors[c].n(), factors[c].m(), factors[c].canonical_string()));
    let mut new_index = vec![0u32; k];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new as u32;
    }
    let coloring = EdgeColoring { colors: coloring.colors.iter().map(|&c| new_index[c as usize]).collect(), count: k as u32 };
    let sizes = perm.iter().map(|&old| coordinates.sizes()[old]).collect();
    let coords = (0..g.n())
        .map(|v| perm.iter().map(|&old| coordinates.coordinate(VertexId(v as u32), old)).collect())
        .collect();
    let coordinates = Coordinatization::new(sizes, coords).expect("axis permutation preserves bijectivity");
    let mut factors: Vec<Option<UndirectedGraph>> = factors.into_iter().map(Some).collect();
    let factors = perm.iter().map(|&old| factors[old].take().unwrap()).collect();
    GraphFactorization { factors, coordinates, coloring }
}
