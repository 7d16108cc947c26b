//! Prime factor decomposition of connected directed hypergraphs.
//!
//! The pipeline factors the 2-section, reads the resulting coordinates as a
//! pre-coordinatization of the hypergraph, and records in an auxiliary
//! graph on the 2-section factor indices every pair `{i, j}` for which some
//! arc running along axis `j` has no copy after incrementing axis `i`.
//! Each connected component of the auxiliary graph becomes one prime factor.

use crate::coords::Coordinatization;
use crate::graph::{two_section, UndirectedGraph};
use crate::graph_pfd::{coordinates_from_coloring, pfd_graph, EdgeColoring, GraphFactorization, GraphPfdError};
use crate::hypergraph::{DirectedHypergraph, Hyperarc, VertexId};
use crate::order::{canonical_order, CanonicalOrder, LexArc};
use crate::union_find::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PfdError {
    #[error("hypergraph is not connected")]
    Disconnected,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl From<GraphPfdError> for PfdError {
    fn from(e: GraphPfdError) -> Self {
        match e {
            GraphPfdError::Disconnected | GraphPfdError::Empty => PfdError::Disconnected,
            GraphPfdError::Inconsistent(inner) => PfdError::Inconsistent(format!("2-section factorization: {inner}")),
        }
    }
}

/// Output of the preprocessing stage.
#[derive(Clone, Debug)]
pub struct Preprocessed {
    pub section: UndirectedGraph,
    pub section_pfd: GraphFactorization,
    pub order: CanonicalOrder,
}

impl Preprocessed {
    /// Number of prime factors of the 2-section.
    pub fn k(&self) -> usize {
        self.section_pfd.k()
    }

    /// The pre-coordinatization.
    pub fn coordinates(&self) -> &Coordinatization {
        &self.section_pfd.coordinates
    }

    /// `E_lex`.
    pub fn arcs(&self) -> &[LexArc] {
        self.order.arcs()
    }
}

/// Factor the 2-section and sort vertices and arcs lexicographically by the
/// resulting pre-coordinates.
pub fn preprocessing(h: &DirectedHypergraph) -> Result<Preprocessed, PfdError> {
    if !h.is_connected() {
        return Err(PfdError::Disconnected);
    }
    let section = two_section(h);
    let section_pfd = pfd_graph(&section)?;
    let order = canonical_order(h, &section_pfd.coordinates);
    Ok(Preprocessed { section, section_pfd, order })
}

/// An arc whose increment along another axis is missing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MissingIncrement {
    /// Index of the arc in the input hypergraph.
    pub arc: usize,
    /// Position of the arc in `E_lex`.
    pub position: usize,
    /// Axis along which the arc's vertices differ.
    pub axis: usize,
    /// Axis whose increment produced no arc.
    pub increment: usize,
}

/// Graph on the 2-section factor indices `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    adjacency: Vec<Vec<usize>>,
    witnesses: Vec<MissingIncrement>,
}

impl AuxiliaryGraph {
    pub fn new(k: usize) -> Self {
        AuxiliaryGraph { adjacency: vec![Vec::new(); k], witnesses: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.adjacency.len()
    }

    /// Insert `{i, j}`; returns `false` if it was present.
    pub fn add_edge(&mut self, i: usize, j: usize) -> bool {
        assert_ne!(i, j, "auxiliary graph has no loops");
        match self.adjacency[i].binary_search(&j) {
            Ok(_) => false,
            Err(pos) => {
                self.adjacency[i].insert(pos, j);
                let pos = self.adjacency[j].binary_search(&i).unwrap_err();
                self.adjacency[j].insert(pos, i);
                true
            }
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    /// Every missing increment found, in `E_lex` order.
    pub fn witnesses(&self) -> &[MissingIncrement] {
        &self.witnesses
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.k());
        for (i, j) in self.edges() {
            uf.union(i, j);
        }
        let labels = uf.labels();
        let mut out = vec![Vec::new(); uf.count()];
        for (i, &l) in labels.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }
}

fn axis_of_ranks(c: &Coordinatization, rank_a: u32, rank_b: u32) -> Vec<usize> {
    let a = c.vertex_at_rank(rank_a as usize);
    let b = c.vertex_at_rank(rank_b as usize);
    c.differing_axes(a, b)
}

/// The single axis along which the vertices of `arc` differ.
fn lex_arc_axis(c: &Coordinatization, arc: &LexArc) -> Result<usize, PfdError> {
    let x = arc.tail[0];
    let y = arc
        .tail
        .iter()
        .chain(&arc.head)
        .copied()
        .find(|&r| r != x)
        .ok_or_else(|| PfdError::Inconsistent(format!("arc {} has a single vertex", arc.source)))?;
    let axes = axis_of_ranks(c, x, y);
    if axes.len() != 1 {
        return Err(PfdError::Inconsistent(format!(
            "arc {} spans axes {axes:?} under the pre-coordinatization",
            arc.source
        )));
    }
    debug_assert!(
        arc.tail.iter().chain(&arc.head).all(|&z| z == x || axis_of_ranks(c, x, z) == axes),
        "arc {} is not contained in one pre-layer",
        arc.source
    );
    Ok(axes[0])
}

/// For every arc along axis `j` and every `i ≠ j`, add `{i, j}` when the
/// increment of the arc on axis `i` is not in `E_lex`.
///
/// Queries run axis by axis: for a fixed axis the increments of `E_lex`
/// come out nearly sorted, so consecutive searches share their path.
/// Witnesses are reported in `E_lex` order regardless.
pub fn build_aux_graph(order: &CanonicalOrder, c: &Coordinatization) -> Result<AuxiliaryGraph, PfdError> {
    let k = c.k();
    let mut aux = AuxiliaryGraph::new(k);
    let axes = order.arcs().iter().map(|arc| lex_arc_axis(c, arc)).collect::<Result<Vec<_>, _>>()?;
    let mut tail = Vec::new();
    let mut head = Vec::new();
    for i in 0..k {
        for (position, arc) in order.arcs().iter().enumerate() {
            let j = axes[position];
            if i == j {
                continue;
            }
            tail.clear();
            head.clear();
            tail.extend(arc.tail.iter().map(|&r| c.increment_rank(r as usize, i) as u32));
            head.extend(arc.head.iter().map(|&r| c.increment_rank(r as usize, i) as u32));
            debug_assert!(tail.windows(2).all(|w| w[0] < w[1]) && head.windows(2).all(|w| w[0] < w[1]));
            if !order.contains(&tail, &head) {
                aux.add_edge(i, j);
                aux.witnesses.push(MissingIncrement { arc: arc.source, position, axis: j, increment: i });
            }
        }
    }
    aux.witnesses.sort_by_key(|w| (w.position, w.increment));
    Ok(aux)
}

/// Prime factors with a coordinatization of the input realizing their
/// product.
#[derive(Clone, Debug)]
pub struct HypergraphFactorization {
    /// Factor `s` has vertices named `1..=l_s`; vertex id `i` corresponds to
    /// coordinate value `i + 1` on axis `s`.
    pub factors: Vec<DirectedHypergraph>,
    pub coordinates: Coordinatization,
    /// 2-section factor indices merged into each factor.
    pub partition: Vec<Vec<usize>>,
}

impl HypergraphFactorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Check arc by arc that `h` is the product of the factors under
    /// [`Self::coordinates`].
    pub fn verify(&self, h: &DirectedHypergraph) -> Result<(), PfdError> {
        verify_product(h, &self.coordinates, &self.factors)
    }
}

/// `h ≅ □ factors` via `c`: every arc runs along one axis `s`, its
/// projection on `s` is an arc of factor `s`, and the arc counts agree.
pub fn verify_product(h: &DirectedHypergraph, c: &Coordinatization, factors: &[DirectedHypergraph]) -> Result<(), PfdError> {
    let fail = |msg: String| Err(PfdError::Inconsistent(msg));
    if c.n() != h.n() || c.k() != factors.len() {
        return fail(format!("coordinatization shape {}x{} does not fit {} factors", c.n(), c.k(), factors.len()));
    }
    for (s, f) in factors.iter().enumerate() {
        if f.n() != c.sizes()[s] as usize {
            return fail(format!("factor {s} has {} vertices, axis has {}", f.n(), c.sizes()[s]));
        }
    }
    let arc_sets: Vec<std::collections::HashSet<&Hyperarc>> = factors.iter().map(|f| f.arcs().iter().collect()).collect();
    for (idx, e) in h.arcs().iter().enumerate() {
        let Some(s) = c.arc_axis(e) else {
            return fail(format!("arc {idx} does not lie in a single layer"));
        };
        let projected = e.map(|v| VertexId(c.coordinate(v, s) - 1));
        if !arc_sets[s].contains(&projected) {
            return fail(format!("arc {idx} projects to a non-arc of factor {s}"));
        }
    }
    let expected: usize = factors.iter().enumerate().map(|(s, f)| f.m() * (h.n() / c.sizes()[s] as usize)).sum();
    if expected != h.m() {
        return fail(format!("product of factors has {expected} arcs, input has {}", h.m()));
    }
    Ok(())
}

/// Merge 2-section factors along the components of `aux`, recoordinatize
/// from the merged 2-section coloring, and materialize one layer per
/// component as a factor.
pub fn combine(h: &DirectedHypergraph, pre: &Preprocessed, aux: &AuxiliaryGraph) -> Result<HypergraphFactorization, PfdError> {
    let fine = pre.coordinates();
    let partition = aux.components();
    let mut component_of = vec![0usize; aux.k()];
    for (s, comp) in partition.iter().enumerate() {
        for &i in comp {
            component_of[i] = s;
        }
    }
    let section = &pre.section;
    let mut colors = vec![u32::MAX; section.m()];
    for (idx, e) in h.arcs().iter().enumerate() {
        let axis = fine
            .arc_axis(e)
            .ok_or_else(|| PfdError::Inconsistent(format!("arc {idx} spans several pre-layers")))?;
        let color = component_of[axis] as u32;
        let vs = e.vertices();
        for (a, &x) in vs.iter().enumerate() {
            for &y in &vs[a + 1..] {
                let id = section.edge_id(x.0, y.0).expect("arc pairs are 2-section edges");
                match colors[id] {
                    u32::MAX => colors[id] = color,
                    c if c == color => {}
                    c => {
                        return Err(PfdError::Inconsistent(format!(
                            "2-section edge {}-{} colored {c} and {color}",
                            x.0, y.0
                        )))
                    }
                }
            }
        }
    }
    let coloring = EdgeColoring::new(colors).map_err(|e| PfdError::Inconsistent(e.to_string()))?;
    let merged = coordinates_from_coloring(section, &coloring)
        .map_err(|e| PfdError::Inconsistent(format!("merged coloring is not a product relation: {e}")))?;
    let coordinates = relabel_by_projection(fine, &merged, &partition);
    let factors = materialize(h, &coordinates);
    Ok(HypergraphFactorization { factors, coordinates, partition })
}

/// Renumber values on each merged axis `s` by the lexicographic order of
/// the fine coordinates restricted to the indices in component `s`.
fn relabel_by_projection(fine: &Coordinatization, merged: &Coordinatization, partition: &[Vec<usize>]) -> Coordinatization {
    let root = VertexId(0);
    let mut value_maps = Vec::with_capacity(merged.k());
    for (s, comp) in partition.iter().enumerate() {
        let size = merged.sizes()[s] as usize;
        // Layer through the root along axis s: one vertex per value.
        let mut reps = vec![(Vec::new(), 0u32); size];
        for v in merged.lex_order() {
            let on_layer = (0..merged.k()).filter(|&a| a != s).all(|a| merged.coordinate(*v, a) == merged.coordinate(root, a));
            if on_layer {
                let val = merged.coordinate(*v, s);
                reps[val as usize - 1] = (fine.project(*v, comp), val);
            }
        }
        reps.sort();
        let mut map = vec![0u32; size + 1];
        for (new, (_, old)) in reps.iter().enumerate() {
            map[*old as usize] = new as u32 + 1;
        }
        value_maps.push(map);
    }
    let coords = (0..merged.n())
        .map(|v| (0..merged.k()).map(|s| value_maps[s][merged.coordinate(VertexId(v as u32), s) as usize]).collect())
        .collect();
    Coordinatization::new(merged.sizes().to_vec(), coords).expect("value relabeling is a bijection per axis")
}

fn materialize(h: &DirectedHypergraph, c: &Coordinatization) -> Vec<DirectedHypergraph> {
    let origin = c.vertex_at(&vec![1; c.k()]).expect("grid contains the all-ones vertex");
    (0..c.k())
        .map(|s| {
            let (layer, _) = c.extract_layer(h, &[s], origin);
            let names = (1..=layer.n()).map(|i| i.to_string()).collect();
            layer.renamed(names).expect("layer of a valid hypergraph is valid")
        })
        .collect()
}

/// Full pipeline: preprocessing, auxiliary graph, combine, and the arc-wise
/// reconstruction check.
pub fn pfd_hypergraph(h: &DirectedHypergraph) -> Result<HypergraphFactorization, PfdError> {
    let pre = preprocessing(h)?;
    let result = match pre.k() {
        0 => HypergraphFactorization { factors: Vec::new(), coordinates: Coordinatization::trivial(), partition: Vec::new() },
        1 => {
            let coordinates = pre.coordinates().clone();
            let factors = materialize(h, &coordinates);
            HypergraphFactorization { factors, coordinates, partition: vec![vec![0]] }
        }
        _ => {
            let aux = build_aux_graph(&pre.order, pre.coordinates())?;
            combine(h, &pre, &aux)?
        }
    };
    result.verify(h)?;
    debug_assert!(result.len() as f64 <= (h.n() as f64).log2().max(0.0));
    Ok(result)
}
