use std::fmt::Write;

use crate::congruence::CongruenceLattice;

/// The Hasse diagram as a DOT digraph, edges pointing from each congruence
/// to its upper covers. Nodes are numbered in canonical order.
pub fn emit_dot(lat: &CongruenceLattice) -> String {
    let mut out = String::from("digraph congruences {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, p) in lat.congruences().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{p}\"];").expect("writing to a String");
    }
    let mut covers = lat.covers().to_vec();
    covers.sort_unstable();
    for (i, j) in covers {
        writeln!(out, "  n{i} -> n{j};").expect("writing to a String");
    }
    out.push_str("}\n");
    out
}
