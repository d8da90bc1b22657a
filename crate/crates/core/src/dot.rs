//! Graphviz DOT export.
//!
//! Quivers become digraphs whose edges carry the image under `f` as an
//! attribute; border loops are drawn bold blue and virtual loops dashed gray.
//! Brauer graphs become undirected graphs with record-shaped nodes whose
//! ports `p0, p1, …` follow the cyclic order at each vertex.

use std::fmt::Write;

use crate::brauer::BrauerGraph;
use crate::weighted::WeightedBiserialQuiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn quiver_to_dot(wbq: &WeightedBiserialQuiver) -> String {
    let bq = wbq.bq();
    let border: Vec<_> = bq.border_loops();
    let mut out = String::from("digraph quiver {\n");
    for v in bq.vertices() {
        let _ = writeln!(out, "  {};", quote(v.as_str()));
    }
    for a in bq.quiver().arrows() {
        let mut attrs = vec![
            format!("label={}", quote(a.id.as_str())),
            format!("f={}", quote(bq.f().apply(&a.id).as_str())),
            format!("weight_m={}", wbq.weight(&a.id)),
        ];
        if border.contains(&&a.id) {
            attrs.push("style=bold".into());
            attrs.push("color=blue".into());
        } else if wbq.is_virtual(&a.id) {
            attrs.push("style=dashed".into());
            attrs.push("color=gray".into());
        }
        let _ = writeln!(out, "  {} -> {} [{}];", quote(a.source.as_str()), quote(a.target.as_str()), attrs.join(", "));
    }
    out.push_str("}\n");
    out
}

pub fn brauer_to_dot(graph: &BrauerGraph) -> String {
    let mut out = String::from("graph brauer {\n  node [shape=record];\n");
    for (id, v) in graph.vertices() {
        let ports: Vec<String> = (0..v.cyclic_order.len()).map(|i| format!("<p{i}>")).collect();
        let label = format!("{} (e={})|{{{}}}", id, v.multiplicity, ports.join("|"));
        let _ = writeln!(out, "  {} [label={}];", quote(id.as_str()), quote(&label));
    }
    let port = |h| {
        let v = graph.vertex_of(h);
        let i = graph.vertices()[v].cyclic_order.iter().position(|x| x == h).expect("attached");
        format!("{}:p{i}", quote(v.as_str()))
    };
    for (id, [h1, h2]) in graph.edges() {
        let _ = writeln!(out, "  {} -- {} [label={}];", port(h1), port(h2), quote(id.as_str()));
    }
    out.push_str("}\n");
    out
}
