//! Graphviz rendering of trees and partition results.

use std::fmt::Write;

use treesplit::{Color, PartitionResult, RootedTree};

fn fill(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Blue => "blue",
        Color::Green => "green",
        Color::Uncolored => "white",
    }
}

/// DOT digraph with parent-to-child edges. With a partition, vertices are
/// filled by their color and `A`/`B` members get box/diamond shapes.
pub fn to_dot(t: &RootedTree, partition: Option<&PartitionResult>) -> String {
    let n = t.len();
    let mut membership = vec![""; n];
    let mut colors = vec![Color::Uncolored; n];
    if let Some(p) = partition {
        for &v in &p.a {
            membership[v] = "A";
        }
        for &v in &p.b {
            membership[v] = "B";
        }
        colors = p.color_vec(n);
    }
    let mut out = String::from("digraph tree {\n  node [style=filled, fillcolor=white];\n");
    for v in 0..n {
        let (shape, tag) = match membership[v] {
            "A" => ("box", "\\nA"),
            "B" => ("diamond", "\\nB"),
            _ => ("ellipse", ""),
        };
        writeln!(
            out,
            "  {v} [label=\"{v}\\n{}{tag}\", shape={shape}, fillcolor={}];",
            t.weight(v),
            fill(colors[v])
        )
        .unwrap();
    }
    for v in 0..n {
        for &c in t.children(v) {
            writeln!(out, "  {v} -> {c};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
