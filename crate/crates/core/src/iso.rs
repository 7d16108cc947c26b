//! Isomorphism of small directed hypergraphs by backtracking over
//! refined vertex colors.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::hypergraph::{DirectedHypergraph, Hyperarc, VertexId};

pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("isomorphism search exceeded its budget of {0} nodes")]
pub struct BudgetExceeded(pub u64);

/// A bijection `φ` (indexed by vertices of `a`) with `φ(t(e)) = t(φ(e))`
/// and `φ(h(e)) = h(φ(e))` for every arc, or `None`.
pub fn isomorphic(a: &DirectedHypergraph, b: &DirectedHypergraph) -> Result<Option<Vec<VertexId>>, BudgetExceeded> {
    isomorphic_with_budget(a, b, DEFAULT_BUDGET)
}

/// Like [`isomorphic`], failing after `budget` search nodes.
pub fn isomorphic_with_budget(
    a: &DirectedHypergraph,
    b: &DirectedHypergraph,
    budget: u64,
) -> Result<Option<Vec<VertexId>>, BudgetExceeded> {
    if a.n() != b.n() || a.m() != b.m() || a.rank() != b.rank() {
        return Ok(None);
    }
    let shape = |h: &DirectedHypergraph| {
        let mut s: Vec<_> = h.arcs().iter().map(|e| (e.tail().len(), e.head().len(), e.size())).collect();
        s.sort_unstable();
        s
    };
    if shape(a) != shape(b) {
        return Ok(None);
    }
    let (colors_a, colors_b) = refine_colors(a, b);
    let mut hist_a = colors_a.clone();
    let mut hist_b = colors_b.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return Ok(None);
    }
    let mut search = Search::new(a, b, colors_a, colors_b, budget);
    if search.extend(0)? {
        Ok(Some(search.mapping.into_iter().map(VertexId).collect()))
    } else {
        Ok(None)
    }
}

/// Whether `map` is an isomorphism from `a` onto `b`.
pub fn is_isomorphism(a: &DirectedHypergraph, b: &DirectedHypergraph, map: &[VertexId]) -> bool {
    if a.n() != b.n() || a.m() != b.m() || map.len() != a.n() {
        return false;
    }
    let mut hit = vec![false; b.n()];
    for &v in map {
        if v.index() >= b.n() || std::mem::replace(&mut hit[v.index()], true) {
            return false;
        }
    }
    let arcs_b: HashSet<&Hyperarc> = b.arcs().iter().collect();
    a.arcs().iter().all(|e| arcs_b.contains(&e.map(|v| map[v.index()])))
}

/// Color refinement on the vertex–arc incidence structure, with a shared
/// palette so colors are comparable across the two inputs.
fn refine_colors(a: &DirectedHypergraph, b: &DirectedHypergraph) -> (Vec<u32>, Vec<u32>) {
    let mut palette: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut ca = vec![0u32; a.n()];
    let mut cb = vec![0u32; b.n()];
    let mut classes = 1;
    for _ in 0..a.n().max(1) {
        let na = refine_round(a, &ca, &mut palette);
        let nb = refine_round(b, &cb, &mut palette);
        let mut distinct: Vec<u32> = na.iter().chain(&nb).copied().collect();
        distinct.sort_unstable();
        distinct.dedup();
        ca = na;
        cb = nb;
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    (ca, cb)
}

fn refine_round(h: &DirectedHypergraph, colors: &[u32], palette: &mut HashMap<Vec<u64>, u32>) -> Vec<u32> {
    let arc_sig: Vec<Vec<u64>> = h
        .arcs()
        .iter()
        .map(|e| {
            let mut t: Vec<u64> = e.tail().iter().map(|v| colors[v.index()] as u64).collect();
            let mut hd: Vec<u64> = e.head().iter().map(|v| colors[v.index()] as u64).collect();
            t.sort_unstable();
            hd.sort_unstable();
            let mut sig = vec![t.len() as u64, hd.len() as u64];
            sig.extend(t);
            sig.push(u64::MAX);
            sig.extend(hd);
            sig
        })
        .collect();
    let mut per_vertex: Vec<Vec<(u64, u8)>> = vec![Vec::new(); h.n()];
    for (idx, e) in h.arcs().iter().enumerate() {
        for v in e.vertices() {
            let role = (e.tail().binary_search(&v).is_ok() as u8) | ((e.head().binary_search(&v).is_ok() as u8) << 1);
            per_vertex[v.index()].push((idx as u64, role));
        }
    }
    // Arc colors go through the shared palette so both graphs agree.
    let arc_ids: Vec<u64> = arc_sig
        .iter()
        .map(|sig| {
            let mut key = vec![u64::MAX - 1];
            key.extend_from_slice(sig);
            let len = palette.len() as u32;
            *palette.entry(key).or_insert(len) as u64
        })
        .collect();
    (0..h.n())
        .map(|v| {
            let mut inc: Vec<(u64, u8)> =
                per_vertex[v].iter().map(|&(arc, role)| (arc_ids[arc as usize], role)).collect();
            inc.sort_unstable();
            let mut key = vec![colors[v] as u64];
            key.extend(inc.into_iter().flat_map(|(c, r)| [c, r as u64]));
            let len = palette.len() as u32;
            *palette.entry(key).or_insert(len)
        })
        .collect()
}

struct Search<'a> {
    a: &'a DirectedHypergraph,
    colors_a: Vec<u32>,
    colors_b: Vec<u32>,
    order: Vec<u32>,
    /// Arcs of `a` that become fully mapped when `order[i]` is placed.
    closing: Vec<Vec<usize>>,
    arcs_b: HashSet<Hyperarc>,
    mapping: Vec<u32>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(a: &'a DirectedHypergraph, b: &DirectedHypergraph, colors_a: Vec<u32>, colors_b: Vec<u32>, budget: u64) -> Self {
        let order = search_order(a, &colors_a);
        let mut position = vec![0usize; a.n()];
        for (i, &v) in order.iter().enumerate() {
            position[v as usize] = i;
        }
        let mut closing = vec![Vec::new(); a.n()];
        for (idx, e) in a.arcs().iter().enumerate() {
            let last = e.vertices().iter().map(|v| position[v.index()]).max().unwrap();
            closing[last].push(idx);
        }
        Search {
            a,
            colors_a,
            colors_b,
            order,
            closing,
            arcs_b: b.arcs().iter().cloned().collect(),
            mapping: vec![u32::MAX; a.n()],
            used: vec![false; b.n()],
            nodes: 0,
            budget,
        }
    }

    fn extend(&mut self, depth: usize) -> Result<bool, BudgetExceeded> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth] as usize;
        for w in 0..self.used.len() {
            if self.used[w] || self.colors_b[w] != self.colors_a[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExceeded(self.budget));
            }
            self.mapping[v] = w as u32;
            self.used[w] = true;
            let consistent = self.closing[depth].iter().all(|&idx| {
                let image = self.a.arcs()[idx].map(|x| VertexId(self.mapping[x.index()]));
                self.arcs_b.contains(&image)
            });
            if consistent && self.extend(depth + 1)? {
                return Ok(true);
            }
            self.used[w] = false;
            self.mapping[v] = u32::MAX;
        }
        Ok(false)
    }
}

/// Breadth-first over incidence, each component started from its rarest
/// color, so that arcs close as early as possible.
fn search_order(h: &DirectedHypergraph, colors: &[u32]) -> Vec<u32> {
    let mut freq: HashMap<u32, usize> = HashMap::new();
    for &c in colors {
        *freq.entry(c).or_default() += 1;
    }
    let mut starts: Vec<u32> = (0..h.n() as u32).collect();
    starts.sort_by_key(|&v| (freq[&colors[v as usize]], v));
    let incidence = h.incidence();
    let mut seen = vec![false; h.n()];
    let mut order = Vec::with_capacity(h.n());
    for s in starts {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &idx in &incidence[u as usize] {
                for w in h.arcs()[idx].vertices() {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        queue.push_back(w.0);
                    }
                }
            }
        }
    }
    order
}
