use std::fmt::Write;

use super::Lts;

/// GraphViz rendering; the initial state is double-circled and internal
/// steps are dashed.
pub fn export_dot(lts: &Lts) -> String {
    let mut out = String::from("digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n");
    for s in 0..lts.n_states() {
        if s == lts.initial() {
            let _ = writeln!(out, "  s{s} [label=\"{s}\", shape=doublecircle];");
        } else {
            let _ = writeln!(out, "  s{s} [label=\"{s}\"];");
        }
    }
    for t in lts.transitions() {
        let label = lts.label(t.label);
        let style = if label.is_tau() { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  s{} -> s{} [label=\"{label}\"{style}];",
            t.src, t.dst
        );
    }
    out.push_str("}\n");
    out
}
