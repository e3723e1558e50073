use std::fmt::Write as _;

use super::lattice::Skeleton;

/// A node of an exported graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotNode {
    pub id: usize,
    pub label: String,
    pub color: Option<&'static str>,
}

/// Graphviz `graph` text for an undirected graph.
pub fn to_dot(name: &str, nodes: &[DotNode], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    writeln!(out, "  node [style=filled];").unwrap();
    for n in nodes {
        match n.color {
            Some(c) => writeln!(
                out,
                "  n{} [label=\"{}\", fillcolor=\"{}\"];",
                n.id, n.label, c
            )
            .unwrap(),
            None => writeln!(out, "  n{} [label=\"{}\"];", n.id, n.label).unwrap(),
        }
    }
    for (a, b) in edges {
        writeln!(out, "  n{a} -- n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn skeleton_dot(s: &Skeleton) -> String {
    let nodes: Vec<DotNode> = s
        .vertices
        .iter()
        .map(|&v| DotNode {
            id: v,
            label: format!("v{v}"),
            color: None,
        })
        .collect();
    to_dot("skeleton", &nodes, &s.edges)
}
