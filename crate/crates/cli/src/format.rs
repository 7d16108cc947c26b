//! The `dhg 1` text format.
//!
//! ```text
//! dhg 1
//! # comment
//! arc a b -> c
//! arc a c -> a c
//! vertex z
//! ```
//!
//! Vertices are introduced by first appearance. An undirected hyperedge is
//! an arc whose two sides coincide.

use std::cmp::Ordering;
use std::fmt;

use hyperfactor::{Coordinatization, DirectedHypergraph, HypergraphBuilder, VertexId, Violation};

pub const HEADER: &str = "dhg 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based; 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
pub struct ParseError(pub Vec<Diagnostic>);

pub fn parse(text: &str) -> Result<DirectedHypergraph, ParseError> {
    let mut diags = Vec::new();
    let mut builder = HypergraphBuilder::new();
    // Line number of every arc, by arc index.
    let mut arc_lines = Vec::new();
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        if !saw_header {
            if line.split_whitespace().collect::<Vec<_>>() != ["dhg", "1"] {
                diags.push(Diagnostic { line: line_no, message: format!("expected header `{HEADER}`") });
                return Err(ParseError(diags));
            }
            saw_header = true;
            continue;
        }
        match keyword {
            "arc" => {
                let rest: Vec<&str> = tokens.collect();
                let arrows = rest.iter().filter(|t| **t == "->").count();
                if arrows != 1 {
                    diags.push(Diagnostic { line: line_no, message: "arc needs exactly one `->`".into() });
                    continue;
                }
                let split = rest.iter().position(|t| *t == "->").unwrap();
                let (tail, head) = (&rest[..split], &rest[split + 1..]);
                if tail.is_empty() || head.is_empty() {
                    let side = if tail.is_empty() { "tail" } else { "head" };
                    diags.push(Diagnostic { line: line_no, message: format!("empty {side}") });
                    continue;
                }
                builder.arc(tail, head);
                arc_lines.push(line_no);
            }
            "vertex" => {
                let names: Vec<&str> = tokens.collect();
                if names.len() != 1 {
                    diags.push(Diagnostic { line: line_no, message: "vertex takes exactly one name".into() });
                    continue;
                }
                builder.vertex(names[0]);
            }
            other => diags.push(Diagnostic { line: line_no, message: format!("unknown directive `{other}`") }),
        }
    }
    if !saw_header {
        diags.push(Diagnostic { line: 0, message: format!("missing header `{HEADER}`") });
    }
    if !diags.is_empty() {
        return Err(ParseError(diags));
    }
    builder.build().map_err(|e| {
        let at = |arc: usize| arc_lines[arc];
        ParseError(
            e.violations
                .iter()
                .map(|v| match v {
                    Violation::EmptyTail { arc } | Violation::EmptyHead { arc } => {
                        Diagnostic { line: at(*arc), message: "empty side".into() }
                    }
                    Violation::Loop { arc } => Diagnostic { line: at(*arc), message: "loop: arc has one vertex".into() },
                    Violation::MultiArc { arc, first } => {
                        Diagnostic { line: at(*arc), message: format!("multi-arc: repeats line {}", at(*first)) }
                    }
                    other => Diagnostic { line: 0, message: other.to_string() },
                })
                .collect(),
        )
    })
}

/// Compare names with embedded numbers by value, so `v2 < v10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    while !x.is_empty() && !y.is_empty() {
        let dx = x[0].is_ascii_digit();
        let dy = y[0].is_ascii_digit();
        let ord = if dx && dy {
            let lx = x.iter().take_while(|c| c.is_ascii_digit()).count();
            let ly = y.iter().take_while(|c| c.is_ascii_digit()).count();
            let (nx, ny) = (trim_zeros(&x[..lx]), trim_zeros(&y[..ly]));
            let ord = nx.len().cmp(&ny.len()).then_with(|| nx.cmp(ny)).then_with(|| lx.cmp(&ly));
            x = &x[lx..];
            y = &y[ly..];
            ord
        } else {
            let ord = x[0].cmp(&y[0]);
            x = &x[1..];
            y = &y[1..];
            ord
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    x.len().cmp(&y.len())
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let lead = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[lead.min(digits.len().saturating_sub(1))..]
}

/// Vertex order used for output: coordinate order when `c` is given,
/// natural name order otherwise.
pub fn output_order(h: &DirectedHypergraph, c: Option<&Coordinatization>) -> Vec<VertexId> {
    match c {
        Some(c) => c.lex_order().to_vec(),
        None => {
            let mut order: Vec<VertexId> = h.vertices().collect();
            order.sort_by(|&a, &b| natural_cmp(h.name(a), h.name(b)));
            order
        }
    }
}

/// Coordinate tuple as `(1,2,3)`.
pub fn coord_tuple(c: &Coordinatization, v: VertexId) -> String {
    let parts: Vec<String> = c.coords(v).iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// Arcs with both sides listed in `order`, sorted by the positions of
/// their tail and then head vertices.
pub fn sorted_arcs(h: &DirectedHypergraph, order: &[VertexId]) -> Vec<(Vec<VertexId>, Vec<VertexId>)> {
    let mut position = vec![0usize; h.n()];
    for (i, v) in order.iter().enumerate() {
        position[v.index()] = i;
    }
    let side = |vs: &[VertexId]| {
        let mut p: Vec<usize> = vs.iter().map(|v| position[v.index()]).collect();
        p.sort_unstable();
        p
    };
    let mut arcs: Vec<(Vec<usize>, Vec<usize>)> = h.arcs().iter().map(|e| (side(e.tail()), side(e.head()))).collect();
    arcs.sort();
    let back = |p: Vec<usize>| p.into_iter().map(|i| order[i]).collect();
    arcs.into_iter().map(|(t, hd)| (back(t), back(hd))).collect()
}

/// Vertices in no arc, in `order`.
pub fn isolated(h: &DirectedHypergraph, order: &[VertexId]) -> Vec<VertexId> {
    let mut covered = vec![false; h.n()];
    for e in h.arcs() {
        for v in e.vertices() {
            covered[v.index()] = true;
        }
    }
    order.iter().copied().filter(|v| !covered[v.index()]).collect()
}

/// Canonical text. Arcs are sorted by their sides read in output order;
/// isolated vertices get a `vertex` line.
pub fn serialize(h: &DirectedHypergraph, c: Option<&Coordinatization>) -> String {
    let order = output_order(h, c);
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    if let Some(c) = c {
        for &v in &order {
            out.push_str(&format!("# coord {} = {}\n", h.name(v), coord_tuple(c, v)));
        }
    }
    for v in isolated(h, &order) {
        out.push_str(&format!("vertex {}\n", h.name(v)));
    }
    let names = |vs: &[VertexId]| vs.iter().map(|&v| h.name(v)).collect::<Vec<_>>().join(" ");
    for (tail, head) in sorted_arcs(h, &order) {
        out.push_str(&format!("arc {} -> {}\n", names(&tail), names(&head)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperfactor::fixtures;

    #[test]
    fn single_arc() {
        let h = parse("dhg 1\narc 1 -> 2\n").unwrap();
        assert_eq!((h.n(), h.m()), (2, 1));
        assert_eq!(serialize(&h, None), "dhg 1\narc 1 -> 2\n");
    }

    #[test]
    fn loop_and_multi_arc_are_reported_by_line() {
        let err = parse("dhg 1\narc 1 -> 1\n").unwrap_err();
        assert_eq!(err.0[0].line, 2);
        assert!(err.0[0].message.contains("loop"));
        let err = parse("dhg 1\n# c\narc 1 -> 2\narc 1 -> 2\n").unwrap_err();
        assert_eq!(err.0[0].line, 4);
        assert!(err.0[0].message.contains("line 3"));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse("arc 1 -> 2\n").unwrap_err().0[0].line, 1);
        assert!(parse("").is_err());
        let err = parse("dhg 1\narc -> 2\narc 1 2\nedge 1 2\n").unwrap_err();
        let lines: Vec<usize> = err.0.iter().map(|d| d.line).collect();
        assert_eq!(lines, [2, 3, 4]);
    }

    #[test]
    fn undirected_edges_have_equal_sides() {
        let h = parse("dhg 1\narc a b c -> a b c\n").unwrap();
        assert!(h.arcs()[0].is_undirected());
    }

    #[test]
    fn unit_serializes_to_one_vertex_line() {
        assert_eq!(serialize(&fixtures::k1(), None), "dhg 1\nvertex 1\n");
        let h = parse("dhg 1\nvertex 1\n").unwrap();
        assert_eq!(h.n(), 1);
    }

    #[test]
    fn round_trip_is_byte_stable() {
        for h in [fixtures::fig1(), fixtures::fig2(), fixtures::m2()] {
            let text = serialize(&h, None);
            let again = parse(&text).unwrap();
            assert_eq!(serialize(&again, None), text);
            assert_eq!(again.m(), h.m());
        }
    }

    #[test]
    fn natural_order() {
        let mut v = vec!["v10", "v2", "a", "v1", "11|2", "11|10", "007", "7"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, ["7", "007", "11|2", "11|10", "a", "v1", "v2", "v10"]);
    }
}
