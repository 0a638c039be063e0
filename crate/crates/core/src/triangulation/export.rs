//! DOT and structured exports of a triangulation.

use std::fmt::Write;

use serde::Serialize;

use super::chain::{AvatarKind, Avatars};
use super::graph::EdgeKind;
use super::{Shelling, Triangulation};
use crate::perm::{IndexSet, Permutation};

#[derive(Debug, Clone, Serialize)]
pub struct BlockExport {
    pub big: IndexSet,
    pub small: IndexSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplexExport {
    pub vertices: Vec<Vec<usize>>,
    pub label_perm: Permutation,
    pub avatars: Avatars,
    pub block: BlockExport,
    pub shelling_number: usize,
    pub boundary_removed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeExport {
    pub from: usize,
    pub to: usize,
    pub label: String,
    #[serde(rename = "type")]
    pub kind: EdgeKind,
    pub oriented: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangulationExport {
    pub simplices: Vec<SimplexExport>,
    pub edges: Vec<EdgeExport>,
}

/// Simplices with their vertex expressions and shelling numbers; edges by
/// simplex index in the oriented direction.
pub fn export(t: &Triangulation, shelling: &Shelling) -> TriangulationExport {
    let numbers = shelling.numbers();
    let simplices = t
        .simplices
        .iter()
        .enumerate()
        .map(|(v, s)| {
            let node = t.graph.node(v);
            SimplexExport {
                vertices: s
                    .vertices
                    .iter()
                    .map(|&x| t.poset.point(x).coords().to_vec())
                    .collect(),
                label_perm: s.label_perm.clone(),
                avatars: node.avatars.clone(),
                block: BlockExport {
                    big: node.block.big.clone(),
                    small: node.block.small.clone(),
                },
                shelling_number: numbers[v],
                boundary_removed: s.boundary_removed,
            }
        })
        .collect();
    let edges = t
        .graph
        .edges()
        .iter()
        .map(|e| {
            let (from, to) = e.oriented.unwrap_or((e.a, e.b));
            EdgeExport {
                from,
                to,
                label: format!("e_{}", e.label),
                kind: e.kind,
                oriented: e.oriented.is_some(),
            }
        })
        .collect();
    TriangulationExport { simplices, edges }
}

/// Graphviz rendering keyed by one avatar.
///
/// Nodes show all five avatars and the block `(I;J)`; simplices with a
/// removed facet are filled and carry a dashed `e_0` self-marker. The Γ and
/// R graphs are drawn undirected.
pub fn to_dot(t: &Triangulation, key: AvatarKind) -> String {
    let g = &t.graph;
    let directed = !matches!(key, AvatarKind::Gamma | AvatarKind::R);
    let mut out = String::new();
    let name = match key {
        AvatarKind::Gamma => "Gamma",
        AvatarKind::R => "R",
        AvatarKind::P => "P",
        AvatarKind::Q => "Q",
        AvatarKind::S => "S",
    };
    writeln!(out, "digraph {name}_{}_{} {{", t.k(), t.n()).unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for v in 0..g.len() {
        let node = g.node(v);
        let a = &node.avatars;
        let label = format!(
            "{}\\nG={} R={} P={}\\nQ={} S={}\\n({};{})",
            a.get(key),
            a.gamma,
            a.r,
            a.p,
            a.q,
            a.s,
            node.block.big,
            node.block.small
        );
        let fill = if node.boundary_removed {
            ", style=filled, fillcolor=lightgray"
        } else {
            ""
        };
        writeln!(out, "  n{v} [label=\"{label}\"{fill}];").unwrap();
    }
    for e in g.edges() {
        let (from, to) = e.oriented.unwrap_or((e.a, e.b));
        let dir = if directed && e.oriented.is_some() {
            ""
        } else {
            ", dir=none"
        };
        let style = if e.kind == EdgeKind::TypeTwo {
            ", color=blue"
        } else {
            ""
        };
        writeln!(
            out,
            "  n{from} -> n{to} [label=\"e_{}\"{dir}{style}];",
            e.label
        )
        .unwrap();
    }
    for v in (0..g.len()).filter(|&v| g.has_phantom(v)) {
        writeln!(out, "  n{v} -> n{v} [label=\"e_0\", style=dashed];").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::TieBreak;

    #[test]
    fn dot_35() {
        let t = Triangulation::build(3, 5).unwrap();
        let dot = to_dot(&t, AvatarKind::Q);
        assert!(dot.starts_with("digraph Q_3_5 {"));
        assert_eq!(dot.matches("style=dashed").count(), 4);
        assert_eq!(dot.matches("style=filled").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 19);
        assert!(to_dot(&t, AvatarKind::R).contains("dir=none"));
    }

    #[test]
    fn json_35() {
        let t = Triangulation::build(3, 5).unwrap();
        let s = t.shelling(TieBreak::Lexicographic).unwrap();
        let doc = serde_json::to_value(export(&t, &s)).unwrap();
        assert_eq!(doc["simplices"].as_array().unwrap().len(), 11);
        assert_eq!(doc["edges"].as_array().unwrap().len(), 15);
        let total: u64 = doc["simplices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x["shelling_number"].as_u64().unwrap())
            .sum();
        assert_eq!(total, 19);
        assert_eq!(doc["edges"][0]["type"], "type_one");
        assert!(doc["simplices"][0]["avatars"]["q"].is_string());
    }
}
