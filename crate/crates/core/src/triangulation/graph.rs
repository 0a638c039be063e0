//! The dual graph of the triangulation: simplices joined along shared
//! facets, with edges typed and labeled through the permutation avatars and
//! oriented so that in-degree equals the descent number of the Q-avatar.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::blocks::Block;
use super::chain::{Avatars, SimplexChain};
use super::poset::PosetV;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// Two simplices differing in a middle vertex; label `e_i`, `i >= 1`.
    TypeOne,
    /// Bottom vertex of one traded for a new top vertex of the other; label `e_0`.
    TypeTwo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualEdge {
    pub a: usize,
    pub b: usize,
    pub label: usize,
    pub kind: EdgeKind,
    /// Vertex of `a` missing from `b`.
    pub a_only: usize,
    /// Vertex of `b` missing from `a`.
    pub b_only: usize,
    /// `(from, to)` once oriented.
    pub oriented: Option<(usize, usize)>,
}

impl DualEdge {
    pub fn other(&self, node: usize) -> usize {
        if node == self.a {
            self.b
        } else {
            self.a
        }
    }

    /// The vertex that `node` has and its neighbor across this edge lacks.
    pub fn vertex_only_in(&self, node: usize) -> usize {
        if node == self.a {
            self.a_only
        } else {
            self.b_only
        }
    }

    pub fn from(&self) -> usize {
        self.oriented.expect("edge not oriented").0
    }

    pub fn to(&self) -> usize {
        self.oriented.expect("edge not oriented").1
    }
}

#[derive(Debug, Clone)]
pub struct NodeInfo {
    pub avatars: Avatars,
    pub block: Block,
    pub boundary_removed: bool,
}

#[derive(Debug, Clone)]
pub struct DualGraph {
    k: usize,
    m: usize,
    nodes: Vec<NodeInfo>,
    edges: Vec<DualEdge>,
    incident: Vec<Vec<usize>>,
    phantom: Vec<bool>,
}

/// Tie-break among simultaneously available simplices in a linear extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Smallest Q-avatar in one-line order.
    Lexicographic,
    /// Uniform choice driven by a seeded generator.
    Seeded(u64),
}

impl DualGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeInfo] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NodeInfo {
        &self.nodes[i]
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    pub fn incident(&self, node: usize) -> &[usize] {
        &self.incident[node]
    }

    pub fn has_phantom(&self, node: usize) -> bool {
        self.phantom[node]
    }

    pub fn phantom_count(&self) -> usize {
        self.phantom.iter().filter(|&&p| p).count()
    }

    pub fn is_oriented(&self) -> bool {
        self.edges.iter().all(|e| e.oriented.is_some())
    }

    pub fn find_by(&self, kind: super::chain::AvatarKind, w: &Permutation) -> Option<usize> {
        self.nodes.iter().position(|n| n.avatars.get(kind) == w)
    }

    /// Indices of oriented edges pointing into `node`.
    pub fn in_edges(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[node]
            .iter()
            .copied()
            .filter(move |&e| self.edges[e].oriented.is_some_and(|(_, to)| to == node))
    }

    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[node]
            .iter()
            .copied()
            .filter(move |&e| self.edges[e].oriented.is_some_and(|(from, _)| from == node))
    }

    /// Directed in-degree plus the phantom marker of a removed lower facet.
    pub fn incoming_count(&self, node: usize) -> usize {
        self.in_edges(node).count() + usize::from(self.phantom[node])
    }

    /// Reverse one edge. Used to exercise failure reporting.
    #[doc(hidden)]
    pub fn flip_edge(&mut self, edge: usize) {
        if let Some((from, to)) = self.edges[edge].oriented {
            self.edges[edge].oriented = Some((to, from));
        }
    }

    /// A linear extension of the orientation.
    pub fn topo_order(&self, tie: TieBreak) -> Result<Vec<usize>> {
        let n = self.nodes.len();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_edges(v).count()).collect();
        let mut order = Vec::with_capacity(n);
        match tie {
            TieBreak::Lexicographic => {
                let key = |v: usize| Reverse((self.nodes[v].avatars.q.clone(), v));
                let mut heap: BinaryHeap<_> = (0..n).filter(|&v| indeg[v] == 0).map(key).collect();
                while let Some(Reverse((_, v))) = heap.pop() {
                    order.push(v);
                    for e in self.out_edges(v) {
                        let to = self.edges[e].to();
                        indeg[to] -= 1;
                        if indeg[to] == 0 {
                            heap.push(key(to));
                        }
                    }
                }
            }
            TieBreak::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
                while !ready.is_empty() {
                    let v = ready.swap_remove(rng.gen_range(0..ready.len()));
                    order.push(v);
                    for e in self.out_edges(v) {
                        let to = self.edges[e].to();
                        indeg[to] -= 1;
                        if indeg[to] == 0 {
                            ready.push(to);
                        }
                    }
                }
            }
        }
        if order.len() != n {
            let placed: HashSet<usize> = order.iter().copied().collect();
            return Err(Error::Cycle(self.find_cycle(&placed)));
        }
        Ok(order)
    }

    /// A directed cycle among nodes that Kahn's algorithm could not place.
    fn find_cycle(&self, placed: &HashSet<usize>) -> Vec<usize> {
        let start = (0..self.nodes.len()).find(|v| !placed.contains(v)).unwrap();
        // Walk backwards along in-edges from unplaced nodes until a repeat.
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut path = vec![start];
        let mut v = start;
        loop {
            seen.insert(v, path.len() - 1);
            let prev = self
                .in_edges(v)
                .map(|e| self.edges[e].from())
                .find(|u| !placed.contains(u))
                .expect("unplaced node has an unplaced predecessor");
            if let Some(&pos) = seen.get(&prev) {
                let mut cycle = path[pos..].to_vec();
                cycle.reverse();
                return cycle;
            }
            path.push(prev);
            v = prev;
        }
    }
}

/// Rotate the one-line word left by one: `u_2 ... u_m u_1`.
fn rotate_left(w: &Permutation) -> Permutation {
    let mut letters = w.letters().to_vec();
    letters.rotate_left(1);
    Permutation::new(letters).unwrap()
}

/// `v_i = u_i - 1 (mod m)` with residues in `1..=m`.
pub fn shift_down(w: &Permutation) -> Permutation {
    let m = w.len();
    Permutation::new(
        w.letters()
            .iter()
            .map(|&x| if x == 1 { m } else { x - 1 })
            .collect(),
    )
    .unwrap()
}

fn letters_adjacent(w: &Permutation, i: usize) -> bool {
    w.position_of(i).abs_diff(w.position_of(i + 1)) == 1
}

/// Edges predicted from label permutations alone: swap adjacent positions
/// holding non-consecutive values, or rotate left when the first letter is
/// neither 1 nor m.
pub fn combinatorial_r_edges(labels: &[Permutation]) -> BTreeSet<(usize, usize)> {
    let m = labels[0].len();
    let index: HashMap<&Permutation, usize> =
        labels.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut out = BTreeSet::new();
    for (a, u) in labels.iter().enumerate() {
        for i in 1..m {
            if u.at(i).abs_diff(u.at(i + 1)) != 1 {
                if let Some(&b) = index.get(&u.swap_positions(i).unwrap()) {
                    out.insert((a.min(b), a.max(b)));
                }
            }
        }
        if m >= 2 && u.at(1) != 1 && u.at(1) != m {
            if let Some(&b) = index.get(&rotate_left(u)) {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out
}

/// Adjacency from shared facets, typed and labeled, checked against the
/// combinatorial edge description of the label permutations.
pub fn build_dual_graph(poset: &PosetV, simplices: &[SimplexChain]) -> Result<DualGraph> {
    let m = poset.m();
    let nodes: Vec<NodeInfo> = simplices
        .iter()
        .map(|s| {
            let avatars = Avatars::from_label(&s.label_perm);
            let block = Block::new(avatars.p.descent_set(), avatars.q.reverse_excedance_set());
            NodeInfo {
                avatars,
                block,
                boundary_removed: s.boundary_removed,
            }
        })
        .collect();

    let mut facets: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
    for (si, s) in simplices.iter().enumerate() {
        for drop in 0..=m {
            let mut f: Vec<usize> = s
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != drop)
                .map(|(_, &v)| v)
                .collect();
            f.sort_unstable();
            facets.entry(f).or_default().push((si, drop));
        }
    }

    let mut edges = Vec::new();
    for (facet, owners) in &facets {
        match owners.as_slice() {
            [_] => {}
            [(x, px), (y, py)] => {
                let (mut a, mut pa, mut b, mut pb) = (*x, *px, *y, *py);
                if a > b {
                    std::mem::swap(&mut a, &mut b);
                    std::mem::swap(&mut pa, &mut pb);
                }
                let edge = classify_edge(simplices, &nodes, m, (a, pa), (b, pb))?;
                edges.push(edge);
            }
            _ => {
                return Err(Error::Inconsistent(format!(
                    "facet {facet:?} is shared by {} simplices",
                    owners.len()
                )))
            }
        }
    }
    edges.sort_by_key(|e| (e.a, e.b));

    let geometric: BTreeSet<(usize, usize)> = edges.iter().map(|e| (e.a, e.b)).collect();
    let labels: Vec<Permutation> = simplices.iter().map(|s| s.label_perm.clone()).collect();
    let predicted = combinatorial_r_edges(&labels);
    if geometric != predicted {
        let witness = geometric
            .symmetric_difference(&predicted)
            .next()
            .copied()
            .unwrap();
        return Err(Error::Inconsistent(format!(
            "geometric and combinatorial adjacency disagree on {} -- {}",
            labels[witness.0], labels[witness.1]
        )));
    }

    let mut incident = vec![Vec::new(); nodes.len()];
    for (ei, e) in edges.iter().enumerate() {
        incident[e.a].push(ei);
        incident[e.b].push(ei);
    }
    Ok(DualGraph {
        k: poset.k(),
        m,
        phantom: vec![false; nodes.len()],
        nodes,
        edges,
        incident,
    })
}

fn classify_edge(
    simplices: &[SimplexChain],
    nodes: &[NodeInfo],
    m: usize,
    (a, pa): (usize, usize),
    (b, pb): (usize, usize),
) -> Result<DualEdge> {
    let (ra, rb) = (&nodes[a].avatars.r, &nodes[b].avatars.r);
    let (qa, qb) = (&nodes[a].avatars.p, &nodes[b].avatars.p);
    let fail = |what: &str| {
        Err(Error::Inconsistent(format!(
            "edge {ra} -- {rb} (vertex positions {pa}, {pb}): {what}"
        )))
    };
    let a_only = simplices[a].vertices[pa];
    let b_only = simplices[b].vertices[pb];
    if pa == pb && pa >= 1 && pa < m {
        let i = pa;
        if ra.swap_positions(i)? != *rb || ra.at(i).abs_diff(ra.at(i + 1)) == 1 {
            return fail("middle-vertex exchange is not an admissible position swap");
        }
        if qa.swap_letters(i)? != *qb || letters_adjacent(qa, i) {
            return fail("P-avatars are not related by an admissible letter swap");
        }
        return Ok(DualEdge {
            a,
            b,
            label: i,
            kind: EdgeKind::TypeOne,
            a_only,
            b_only,
            oriented: None,
        });
    }
    // Type two: the lower simplex loses its bottom, the upper gains a top.
    let (lower, upper) = match (pa, pb) {
        (0, p) if p == m => (a, b),
        (p, 0) if p == m => (b, a),
        _ => return fail("simplices differ in incompatible positions"),
    };
    let (rl, ru) = (&nodes[lower].avatars.r, &nodes[upper].avatars.r);
    if rotate_left(rl) != *ru || rl.at(1) == 1 || rl.at(1) == m {
        return fail("bottom/top exchange is not an admissible rotation");
    }
    if shift_down(&nodes[lower].avatars.p) != nodes[upper].avatars.p {
        return fail("P-avatars are not related by a cyclic shift");
    }
    Ok(DualEdge {
        a,
        b,
        label: 0,
        kind: EdgeKind::TypeTwo,
        a_only,
        b_only,
        oriented: None,
    })
}

/// Recompute boundary flags geometrically (all but the top vertex on the
/// lower hyperplane, `k > 1` only) and check that they match the label
/// permutations ending in `1`.
pub fn mark_boundary(poset: &PosetV, simplices: &mut [SimplexChain]) -> Result<()> {
    let k = poset.k();
    let m = poset.m();
    for s in simplices.iter_mut() {
        let lower = s
            .vertices
            .iter()
            .filter(|&&v| poset.on_lower_hyperplane(v))
            .count();
        let geometric = k > 1 && lower == m;
        let by_label = k > 1 && s.label_perm.at(m) == 1;
        if geometric != by_label {
            return Err(Error::Inconsistent(format!(
                "boundary test disagrees for label permutation {}",
                s.label_perm
            )));
        }
        s.boundary_removed = geometric;
    }
    Ok(())
}

/// Orient every edge and attach phantom incoming markers to simplices whose
/// lower facet is removed.
///
/// Type one `e_i`: if the reverse excedance sets of the Q-avatars differ,
/// point to the side containing `i`; otherwise point to the side with a
/// descent at `i`. Type two: point from the lower simplex to the upper one.
pub fn orient_edges(graph: &mut DualGraph) -> Result<()> {
    let m = graph.m;
    for e in graph.edges.iter_mut() {
        let (qa, qb) = (&graph.nodes[e.a].avatars.q, &graph.nodes[e.b].avatars.q);
        let into_b = match e.kind {
            EdgeKind::TypeOne => {
                let i = e.label;
                let (ja, jb) = (qa.reverse_excedance_set(), qb.reverse_excedance_set());
                let (sa, sb) = if ja != jb {
                    (ja.contains(i), jb.contains(i))
                } else {
                    (qa.at(i) > qa.at(i + 1), qb.at(i) > qb.at(i + 1))
                };
                if sa == sb {
                    return Err(Error::Inconsistent(format!(
                        "cannot orient e_{i} between {qa} and {qb}"
                    )));
                }
                sb
            }
            EdgeKind::TypeTwo => {
                let (pa, pb) = (&graph.nodes[e.a].avatars.p, &graph.nodes[e.b].avatars.p);
                if shift_down(pa) == *pb {
                    true
                } else if shift_down(pb) == *pa {
                    false
                } else {
                    return Err(Error::Inconsistent(format!(
                        "e_0 between {pa} and {pb} is not a cyclic shift"
                    )));
                }
            }
        };
        e.oriented = Some(if into_b { (e.a, e.b) } else { (e.b, e.a) });
    }

    for v in 0..graph.nodes.len() {
        graph.phantom[v] = graph.nodes[v].boundary_removed;
        let node = &graph.nodes[v];
        let q = &node.avatars.q;
        let internal_e0 = graph
            .in_edges(v)
            .any(|e| graph.edges[e].kind == EdgeKind::TypeTwo);
        let predicted = graph.k > 1 && q.at(m) != m && !internal_e0;
        if node.boundary_removed != predicted {
            return Err(Error::Inconsistent(format!(
                "removed-facet flag of Q-avatar {q} disagrees with its last letter and e_0 in-edges"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::chain::AvatarKind;
    use crate::triangulation::Triangulation;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t35() -> Triangulation {
        Triangulation::build(3, 5).unwrap()
    }

    fn edge_between(t: &Triangulation, kind: AvatarKind, x: &str, y: &str) -> DualEdge {
        let g = &t.graph;
        let a = g.find_by(kind, &p(x)).unwrap();
        let b = g.find_by(kind, &p(y)).unwrap();
        g.edges()
            .iter()
            .find(|e| (e.a, e.b) == (a.min(b), a.max(b)))
            .cloned()
            .unwrap_or_else(|| panic!("no edge {x} -- {y}"))
    }

    #[test]
    fn census() {
        let t = t35();
        assert_eq!(t.graph.len(), 11);
        assert_eq!(t.graph.edges().len(), 15);
        assert_eq!(t.graph.phantom_count(), 4);
    }

    #[test]
    fn p_edge_labels() {
        let t = t35();
        let e = edge_between(&t, AvatarKind::P, "4132", "3142");
        assert_eq!((e.kind, e.label), (EdgeKind::TypeOne, 3));
        let e = edge_between(&t, AvatarKind::P, "4312", "3241");
        assert_eq!((e.kind, e.label), (EdgeKind::TypeTwo, 0));
    }

    #[test]
    fn q_orientations() {
        let t = t35();
        let g = &t.graph;
        let q = |s: &str| g.find_by(AvatarKind::Q, &p(s)).unwrap();
        let arrows = [
            ("1423", "4213", 1),
            ("4213", "4132", 2),
            ("3412", "2143", 2),
            ("3142", "3124", 3),
            ("2413", "3142", 2),
            ("3412", "3421", 3),
            ("3412", "4321", 1),
            ("3421", "4312", 1),
            ("4312", "4321", 3),
        ];
        for (from, to, label) in arrows {
            let e = edge_between(&t, AvatarKind::Q, from, to);
            assert_eq!(
                (e.kind, e.label),
                (EdgeKind::TypeOne, label),
                "{from} -> {to}"
            );
            assert_eq!(e.oriented, Some((q(from), q(to))), "{from} -> {to}");
        }
        let type_two = g
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::TypeTwo)
            .count();
        assert_eq!(type_two, 6);
        let pp = |s: &str| g.find_by(AvatarKind::P, &p(s)).unwrap();
        let e = edge_between(&t, AvatarKind::P, "4312", "3241");
        assert_eq!(e.oriented, Some((pp("4312"), pp("3241"))));
    }

    #[test]
    fn node_4321_has_three_incoming() {
        let t = t35();
        let g = &t.graph;
        let v = g.find_by(AvatarKind::Q, &p("4321")).unwrap();
        assert_eq!(g.incoming_count(v), 3);
        let mut labels: Vec<usize> = g.in_edges(v).map(|e| g.edges()[e].label).collect();
        labels.sort();
        assert_eq!(labels, vec![0, 1, 3]);
        assert!(!g.has_phantom(v));
    }

    #[test]
    fn incoming_equals_descents() {
        let t = t35();
        let g = &t.graph;
        let total: usize = (0..g.len()).map(|v| g.incoming_count(v)).sum();
        assert_eq!(total, 19);
        for v in 0..g.len() {
            assert_eq!(g.incoming_count(v), g.node(v).avatars.q.des());
        }
    }

    #[test]
    fn flagged_q_avatars() {
        let t = t35();
        let mut flagged: Vec<String> = (0..t.graph.len())
            .filter(|&v| t.graph.has_phantom(v))
            .map(|v| t.graph.node(v).avatars.q.to_string())
            .collect();
        flagged.sort();
        assert_eq!(flagged, ["2413", "3142", "3421", "4312"]);
    }

    #[test]
    fn topo_orders() {
        let t = t35();
        let g = &t.graph;
        let order = g.topo_order(TieBreak::Lexicographic).unwrap();
        assert_eq!(order.len(), 11);
        assert_eq!(g.in_edges(order[0]).count(), 0);
        let sources: Vec<usize> = (0..g.len())
            .filter(|&v| g.in_edges(v).count() == 0)
            .collect();
        assert_eq!(sources, vec![order[0]]);
        for seed in 0..10 {
            let order = g.topo_order(TieBreak::Seeded(seed)).unwrap();
            let pos: HashMap<usize, usize> =
                order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            assert!(g.edges().iter().all(|e| pos[&e.from()] < pos[&e.to()]));
        }
        let single = Triangulation::build(1, 4).unwrap();
        assert_eq!(
            single.graph.topo_order(TieBreak::Lexicographic).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn cycle_is_reported() {
        let mut t = t35();
        let g = &mut t.graph;
        let a = g.find_by(AvatarKind::Q, &p("3412")).unwrap();
        let e1 = g.out_edges(a).next().unwrap();
        let b = g.edges()[e1].to();
        let mut rev = g.edges()[e1].clone();
        rev.oriented = Some((b, a));
        g.edges.push(rev);
        let idx = g.edges.len() - 1;
        g.incident[a].push(idx);
        g.incident[b].push(idx);
        match g.topo_order(TieBreak::Lexicographic) {
            Err(Error::Cycle(c)) => {
                assert!(c.contains(&a) && c.contains(&b));
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
    }
}
