//! Graphviz export: the automaton graph with rank-coloured states, followed by a
//! second graph with the covering pairs of the rank order.

use std::fmt::Write;

use crate::automaton::{Pnfa, PreferenceModel};
use crate::order::{PartialOrder, Rank};

const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

fn colour(r: Rank) -> &'static str {
    PALETTE[r.index() % PALETTE.len()]
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The transition graph; parallel edges are drawn once with all their symbols.
pub fn automaton_dot(a: &Pnfa) -> String {
    let alphabet = a.alphabet();
    let order = a.order();
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
    writeln!(out, "  __start -> {};", quote(a.state_name(a.initial()))).unwrap();
    for q in 0..a.num_states() {
        let name = quote(a.state_name(q));
        match a.rank(q) {
            Some(r) => writeln!(
                out,
                "  {name} [label={}, style=filled, fillcolor={}];",
                quote(&format!("{}\n{}", a.state_name(q), order.name(r))),
                quote(colour(r))
            ),
            None => writeln!(out, "  {name} [shape=circle];"),
        }
        .unwrap();
    }
    for q in 0..a.num_states() {
        let mut edges: Vec<(usize, Vec<&str>)> = Vec::new();
        for s in alphabet.symbols() {
            for &t in a.successors(q, s) {
                match edges.iter_mut().find(|(to, _)| *to == t) {
                    Some((_, labels)) => labels.push(alphabet.token(s)),
                    None => edges.push((t, vec![alphabet.token(s)])),
                }
            }
        }
        for (t, labels) in edges {
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(a.state_name(q)),
                quote(a.state_name(t)),
                quote(&labels.join(","))
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the rank order; edges point from the preferred rank down.
pub fn order_dot(order: &PartialOrder) -> String {
    let mut out = String::from("digraph order {\n");
    for r in order.ranks() {
        writeln!(
            out,
            "  {} [style=filled, fillcolor={}];",
            quote(order.name(r)),
            quote(colour(r))
        )
        .unwrap();
    }
    for (h, l) in order.covering_pairs() {
        writeln!(
            out,
            "  {} -> {};",
            quote(order.name(h)),
            quote(order.name(l))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn to_dot(a: &Pnfa) -> String {
    automaton_dot(a) + &order_dot(a.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parity_export() {
        let a = Pnfa::from(&fixtures::parity_pdfa());
        let dot = to_dot(&a);
        assert_eq!(dot.matches("digraph").count(), 2);
        assert!(dot.contains("\"00\" -> \"10\" [label=\"a\"];"));
        assert!(dot.contains("\"b\" -> \"o\";"));
        assert!(dot.contains("\"g\" -> \"o\";"));
        assert_eq!(dot.matches(" -> ").count(), 8 + 1 + 2);
    }
}
