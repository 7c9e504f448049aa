//! Graphviz DOT rendering with stable node and edge order.

use std::fmt::Write as _;

use crate::mesh::TranslationWindow;
use crate::paths::PathQuiver;
use crate::quiver::{DoubledQuiver, Quiver};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn render(name: &str, pq: &PathQuiver) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for v in pq.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for a in pq.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&pq.vertices()[a.source]),
            quote(&pq.vertices()[a.target]),
            quote(&a.label)
        );
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(q: &Quiver) -> String {
    render(q.name().unwrap_or("Q"), &q.path_quiver())
}

pub fn export_dot_doubled(dq: &DoubledQuiver) -> String {
    render(&format!("{}_doubled", dq.base().name().unwrap_or("Q")), dq.path_quiver())
}

/// Columns are drawn left to right; complete meshes are shown as dashed
/// edges from each vertex to its translate.
pub fn export_dot_window(w: &TranslationWindow) -> String {
    let pq = w.path_quiver();
    let n = w.base().vertex_count();
    let mut out = String::from("digraph \"ZQ\" {\n  rankdir=LR;\n");
    for col in 0..=w.max_column() {
        out.push_str("  { rank=same;");
        for i in 0..n {
            let _ = write!(out, " {};", quote(&pq.vertices()[w.vertex(col, i)]));
        }
        out.push_str(" }\n");
    }
    for a in pq.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&pq.vertices()[a.source]),
            quote(&pq.vertices()[a.target]),
            quote(&a.label)
        );
    }
    for z in w.mesh_vertices() {
        let tz = w.tau(z).expect("complete meshes have a translate");
        let _ = writeln!(
            out,
            "  {} -> {} [style=dashed, constraint=false, arrowhead=none];",
            quote(&pq.vertices()[z]),
            quote(&pq.vertices()[tz])
        );
    }
    out.push_str("}\n");
    out
}
