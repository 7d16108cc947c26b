//! Lexicographic orderings of vertices and arcs with respect to a
//! coordinatization, and binary-search arc membership.

use std::cmp::Ordering;

use crate::coords::Coordinatization;
use crate::hypergraph::{DirectedHypergraph, Hyperarc};

/// An arc rewritten over vertex ranks in `V_lex`. Ordered by tail
/// sequence, then head sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LexArc {
    pub tail: Vec<u32>,
    pub head: Vec<u32>,
    /// Index of the arc in the source hypergraph.
    pub source: usize,
}

impl LexArc {
    fn key_cmp(&self, tail: &[u32], head: &[u32]) -> Ordering {
        self.tail.as_slice().cmp(tail).then_with(|| self.head.as_slice().cmp(head))
    }
}

/// `(V_lex, E_lex)`.
#[derive(Clone, Debug)]
pub struct CanonicalOrder {
    arcs: Vec<LexArc>,
    /// `arcs[i].tail[0]`, kept contiguous so the outer search stays in
    /// cache.
    firsts: Vec<u32>,
}

impl CanonicalOrder {
    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[LexArc] {
        &self.arcs
    }

    /// Source indices of the arcs in `E_lex` order.
    pub fn arc_sources(&self) -> Vec<usize> {
        self.arcs.iter().map(|a| a.source).collect()
    }

    /// Binary search for an arc given over ranks; `tail` and `head` must be
    /// sorted.
    pub fn contains(&self, tail: &[u32], head: &[u32]) -> bool {
        let Some(&first) = tail.first() else {
            return false;
        };
        let lo = self.firsts.partition_point(|&f| f < first);
        let hi = lo + self.firsts[lo..].partition_point(|&f| f == first);
        arc_in_set(&self.arcs[lo..hi], tail, head)
    }

    /// Membership of a hypergraph arc, translated through `c`.
    pub fn contains_arc(&self, c: &Coordinatization, e: &Hyperarc) -> bool {
        let (tail, head) = ranks_of(c, e);
        self.contains(&tail, &head)
    }
}

fn ranks_of(c: &Coordinatization, e: &Hyperarc) -> (Vec<u32>, Vec<u32>) {
    let conv = |side: &[crate::hypergraph::VertexId]| {
        let mut r: Vec<u32> = side.iter().map(|&v| c.rank(v) as u32).collect();
        r.sort_unstable();
        r
    };
    (conv(e.tail()), conv(e.head()))
}

/// Sort vertices by coordinates, re-sort each arc's sides by that order,
/// then sort the arcs. `V_lex` is [`Coordinatization::lex_order`].
pub fn canonical_order(h: &DirectedHypergraph, c: &Coordinatization) -> CanonicalOrder {
    let mut arcs: Vec<LexArc> = h
        .arcs()
        .iter()
        .enumerate()
        .map(|(source, e)| {
            let (tail, head) = ranks_of(c, e);
            LexArc { tail, head, source }
        })
        .collect();
    arcs.sort_unstable();
    let firsts = arcs.iter().map(|a| a.tail[0]).collect();
    CanonicalOrder { arcs, firsts }
}

/// Binary-search membership in a sorted slice of [`LexArc`].
pub fn arc_in_set(e_lex: &[LexArc], tail: &[u32], head: &[u32]) -> bool {
    e_lex.binary_search_by(|a| a.key_cmp(tail, head)).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fig1_with_coords() -> (DirectedHypergraph, Coordinatization) {
        let h = fixtures::fig1();
        let coords = h.names().iter().map(|s| s.chars().map(|c| c.to_digit(10).unwrap()).collect()).collect();
        (h, Coordinatization::new(vec![2, 4], coords).unwrap())
    }

    #[test]
    fn fig1_arc_order() {
        let (h, c) = fig1_with_coords();
        let order = canonical_order(&h, &c);
        let labels: Vec<usize> = order.arc_sources().iter().map(|i| i + 1).collect();
        assert_eq!(labels, vec![4, 1, 5, 8, 6, 3, 7, 2]);
    }

    #[test]
    fn membership_by_binary_search() {
        let (h, c) = fig1_with_coords();
        let order = canonical_order(&h, &c);
        let v = |s: &str| h.vertex_by_name(s).unwrap();
        assert!(order.contains_arc(&c, &Hyperarc::new([v("12")], [v("22")])));
        assert!(!order.contains_arc(&c, &Hyperarc::undirected([v("14"), v("24")])));
        assert!(!arc_in_set(&[], &[0], &[1]));
    }

    #[test]
    fn single_arc_order() {
        let h = fixtures::single_arc();
        let c = Coordinatization::new(vec![2], vec![vec![1], vec![2]]).unwrap();
        let order = canonical_order(&h, &c);
        assert_eq!(order.arcs().len(), 1);
        assert_eq!((order.arcs()[0].tail.as_slice(), order.arcs()[0].head.as_slice()), (&[0][..], &[1][..]));
    }
}
