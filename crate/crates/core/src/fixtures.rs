//! Small reference hypergraphs used throughout the tests and examples.
//!
//! `fig1` is a directed prime hypergraph on eight vertices whose 2-section
//! is `K4 □ K2`; vertex names are its pre-coordinates (`ab`, `a ∈ {1,2}`,
//! `b ∈ {1..4}`). `fig2` is `fig1 □ m2`, named `a x b` where `x` is the
//! `m2` coordinate.

use crate::hypergraph::{DirectedHypergraph, HypergraphBuilder};

/// Arcs of [`fig1`], in index order `e1..e8`.
pub const FIG1_ARCS: [(&[&str], &[&str]); 8] = [
    (&["11", "12", "13"], &["12", "13", "14"]),
    (&["21", "22", "23"], &["22", "23", "24"]),
    (&["14"], &["12"]),
    (&["11"], &["21"]),
    (&["12"], &["22"]),
    (&["13", "23"], &["13", "23"]),
    (&["14"], &["24"]),
    (&["13"], &["23"]),
];

pub fn fig1() -> DirectedHypergraph {
    let mut b = HypergraphBuilder::new();
    for (t, h) in FIG1_ARCS {
        b.arc(t, h);
    }
    b.build().expect("fig1 is valid")
}

/// Two vertices joined by one undirected hyperedge.
pub fn m2() -> DirectedHypergraph {
    DirectedHypergraph::numbered(2, &[(&[0, 1], &[0, 1])]).expect("m2 is valid")
}

/// `K1`, the unit of the product.
pub fn k1() -> DirectedHypergraph {
    DirectedHypergraph::unit("1")
}

pub fn fig2() -> DirectedHypergraph {
    let lift = |name: &str, x: u32| -> String {
        let mut c = name.chars();
        let a = c.next().unwrap();
        let b = c.next().unwrap();
        format!("{a}{x}{b}")
    };
    let mut b = HypergraphBuilder::new();
    for x in 1..=2 {
        for (t, h) in FIG1_ARCS {
            let t: Vec<_> = t.iter().map(|s| lift(s, x)).collect();
            let h: Vec<_> = h.iter().map(|s| lift(s, x)).collect();
            b.arc(&t, &h);
        }
    }
    for a in 1..=2 {
        for c in 1..=4 {
            b.undirected(&[format!("{a}1{c}"), format!("{a}2{c}")]);
        }
    }
    b.build().expect("fig2 is valid")
}

/// A single directed arc `({1}, {2})`.
pub fn single_arc() -> DirectedHypergraph {
    DirectedHypergraph::numbered(2, &[(&[0], &[1])]).expect("single arc is valid")
}
