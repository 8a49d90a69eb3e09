use std::fmt::Write;

use super::FundamentalForest;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: one node per `(Delta, r)`, red `s` edges, and a
/// dashed tail for each bipartite component.
pub fn to_dot(f: &FundamentalForest) -> String {
    let mut out = String::new();
    writeln!(out, "digraph forest {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for i in 0..f.nodes().len() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(&f.node_label(i))).unwrap();
    }
    for i in 0..f.nodes().len() {
        if let Some(j) = f.s(i) {
            writeln!(out, "  n{i} -> n{j} [color=red, label=\"s\"];").unwrap();
        }
    }
    for d in 0..f.subgraphs().len() {
        if !f.is_bipartite_component(d) {
            continue;
        }
        let top = f.node_index(d, f.horizon()).expect("bipartite components reach the horizon");
        writeln!(
            out,
            "  inf{d} [shape=plaintext, label=\"({}, r) for all r > {}\"];",
            escape(&f.label(d)),
            f.horizon()
        )
        .unwrap();
        writeln!(out, "  inf{d} -> n{top} [color=red, style=dashed, label=\"s\"];").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
