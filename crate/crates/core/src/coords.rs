//! Coordinatizations: bijections from the vertex set onto a grid
//! `{1..l_1} × … × {1..l_k}`, with cyclic increments and layer extraction.

use crate::hypergraph::{DirectedHypergraph, Hyperarc, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoordError {
    #[error("factor size {0} is below 2")]
    DegenerateFactor(u32),
    #[error("vertex {vertex} has {got} coordinates, expected {expected}")]
    WrongLength { vertex: VertexId, got: usize, expected: usize },
    #[error("vertex {vertex} has coordinate {value} outside 1..={size} on axis {axis}")]
    OutOfGrid { vertex: VertexId, axis: usize, value: u32, size: u32 },
    #[error("vertices {0} and {1} share a coordinate vector")]
    Clash(VertexId, VertexId),
    #[error("grid has {grid} cells but there are {vertices} vertices")]
    SizeMismatch { grid: usize, vertices: usize },
}

/// Vertex coordinates over a full grid. Values are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinatization {
    sizes: Vec<u32>,
    strides: Vec<usize>,
    coords: Vec<u32>,
    by_rank: Vec<VertexId>,
}

impl Coordinatization {
    /// `coords[v]` is the coordinate vector of vertex `v`.
    pub fn new(sizes: Vec<u32>, coords: Vec<Vec<u32>>) -> Result<Self, CoordError> {
        let k = sizes.len();
        if let Some(&bad) = sizes.iter().find(|&&l| l < 2) {
            return Err(CoordError::DegenerateFactor(bad));
        }
        let grid: usize = sizes.iter().map(|&l| l as usize).product();
        if grid != coords.len() {
            return Err(CoordError::SizeMismatch { grid, vertices: coords.len() });
        }
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1] as usize;
        }
        let mut flat = Vec::with_capacity(grid * k);
        let mut by_rank = vec![VertexId(u32::MAX); grid];
        for (v, c) in coords.iter().enumerate() {
            let vertex = VertexId(v as u32);
            if c.len() != k {
                return Err(CoordError::WrongLength { vertex, got: c.len(), expected: k });
            }
            let mut rank = 0;
            for (axis, (&value, &size)) in c.iter().zip(&sizes).enumerate() {
                if value == 0 || value > size {
                    return Err(CoordError::OutOfGrid { vertex, axis, value, size });
                }
                rank += (value as usize - 1) * strides[axis];
            }
            if by_rank[rank].0 != u32::MAX {
                return Err(CoordError::Clash(by_rank[rank], vertex));
            }
            by_rank[rank] = vertex;
            flat.extend_from_slice(c);
        }
        Ok(Coordinatization { sizes, strides, coords: flat, by_rank })
    }

    /// The `k = 0` coordinatization of a single vertex.
    pub fn trivial() -> Self {
        Coordinatization { sizes: Vec::new(), strides: Vec::new(), coords: Vec::new(), by_rank: vec![VertexId(0)] }
    }

    /// Number of axes.
    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn n(&self) -> usize {
        self.by_rank.len()
    }

    pub fn coords(&self, v: VertexId) -> &[u32] {
        let k = self.k();
        &self.coords[v.index() * k..(v.index() + 1) * k]
    }

    pub fn coordinate(&self, v: VertexId, axis: usize) -> u32 {
        self.coords[v.index() * self.k() + axis]
    }

    /// Position of `v` in the lexicographic order of coordinate vectors.
    pub fn rank(&self, v: VertexId) -> usize {
        self.coords(v).iter().zip(&self.strides).map(|(&c, &s)| (c as usize - 1) * s).sum()
    }

    pub fn vertex_at_rank(&self, rank: usize) -> VertexId {
        self.by_rank[rank]
    }

    /// Vertices in lexicographic coordinate order (`V_lex`).
    pub fn lex_order(&self) -> &[VertexId] {
        &self.by_rank
    }

    pub fn vertex_at(&self, coords: &[u32]) -> Option<VertexId> {
        if coords.len() != self.k() {
            return None;
        }
        let mut rank = 0;
        for ((&c, &l), &s) in coords.iter().zip(&self.sizes).zip(&self.strides) {
            if c == 0 || c > l {
                return None;
            }
            rank += (c as usize - 1) * s;
        }
        Some(self.by_rank[rank])
    }

    /// Rank-level increment: add one on `axis`, wrapping `l_axis → 1`.
    #[inline]
    pub fn increment_rank(&self, rank: usize, axis: usize) -> usize {
        let stride = self.strides[axis];
        let size = self.sizes[axis] as usize;
        let digit = (rank / stride) % size;
        if digit + 1 == size {
            rank - digit * stride
        } else {
            rank + stride
        }
    }

    /// `inc(v, axis)`.
    pub fn increment_vertex(&self, v: VertexId, axis: usize) -> VertexId {
        self.by_rank[self.increment_rank(self.rank(v), axis)]
    }

    /// `inc(e, axis)`, applied element-wise to tail and head.
    pub fn increment_arc(&self, e: &Hyperarc, axis: usize) -> Hyperarc {
        e.map(|v| self.increment_vertex(v, axis))
    }

    /// Axes on which `a` and `b` differ.
    pub fn differing_axes(&self, a: VertexId, b: VertexId) -> Vec<usize> {
        self.coords(a).iter().zip(self.coords(b)).enumerate().filter(|(_, (x, y))| x != y).map(|(i, _)| i).collect()
    }

    /// The unique axis along which all vertices of `e` differ, if there is
    /// exactly one.
    pub fn arc_axis(&self, e: &Hyperarc) -> Option<usize> {
        let vs = e.vertices();
        let first = vs[0];
        let mut axis = None;
        for &w in &vs[1..] {
            match self.differing_axes(first, w)[..] {
                [a] if axis.is_none() || axis == Some(a) => axis = Some(a),
                _ => return None,
            }
        }
        axis
    }

    /// `H_{I'}^v`: the sub-hypergraph induced by all `u` agreeing with `v`
    /// outside `free`. Vertices come in lexicographic coordinate order.
    pub fn extract_layer(
        &self,
        h: &DirectedHypergraph,
        free: &[usize],
        v: VertexId,
    ) -> (DirectedHypergraph, Vec<VertexId>) {
        let fixed: Vec<usize> = (0..self.k()).filter(|i| !free.contains(i)).collect();
        let anchor = self.coords(v);
        let keep: Vec<VertexId> = self
            .by_rank
            .iter()
            .copied()
            .filter(|&u| fixed.iter().all(|&i| self.coordinate(u, i) == anchor[i]))
            .collect();
        h.induced(&keep)
    }

    /// Coordinates restricted to `axes`, in that order.
    pub fn project(&self, v: VertexId, axes: &[usize]) -> Vec<u32> {
        axes.iter().map(|&i| self.coordinate(v, i)).collect()
    }
}
