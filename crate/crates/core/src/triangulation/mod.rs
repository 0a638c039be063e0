//! The alcoved triangulation of the half-open hypersimplex, its dual graph
//! and the shelling read off from the graph orientation.

pub mod blocks;
pub mod chain;
pub mod export;
pub mod graph;
pub mod lemmas;
pub mod poset;
pub mod shelling;

pub use blocks::{unique_ascending_representative, Block};
pub use chain::{AvatarKind, Avatars, SimplexChain};
pub use graph::{DualEdge, DualGraph, EdgeKind, TieBreak};
pub use poset::{build_poset, PosetV, ZPoint};
pub use shelling::{shelling_verify, ShellingStep};

use crate::ehrhart::{HVector, HypersimplexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Triangulation {
    pub id: HypersimplexId,
    pub poset: PosetV,
    pub simplices: Vec<SimplexChain>,
    pub graph: DualGraph,
}

/// A verified shelling: node indices in order and the step data.
#[derive(Debug, Clone)]
pub struct Shelling {
    pub order: Vec<usize>,
    pub steps: Vec<ShellingStep>,
}

impl Shelling {
    /// Shelling number of every node, indexed by node.
    pub fn numbers(&self) -> Vec<usize> {
        let mut out = vec![0; self.order.len()];
        for (&v, s) in self.order.iter().zip(&self.steps) {
            out[v] = s.shelling_number();
        }
        out
    }
}

impl Triangulation {
    /// Build and cross-check everything for `Δ'_{k,n}`.
    ///
    /// Fails with [`Error::Inconsistent`] if the geometric construction and
    /// the permutation descriptions disagree anywhere.
    pub fn build(k: usize, n: usize) -> Result<Self> {
        let id = HypersimplexId::half_open(k, n)?;
        let poset = build_poset(k, n)?;
        let mut simplices = chain::enumerate_simplices(&poset);
        graph::mark_boundary(&poset, &mut simplices)?;
        let mut graph = graph::build_dual_graph(&poset, &simplices)?;
        graph::orient_edges(&mut graph)?;
        for v in 0..graph.len() {
            let q = &graph.node(v).avatars.q;
            if graph.incoming_count(v) != q.des() {
                return Err(Error::Inconsistent(format!(
                    "simplex with Q-avatar {q} has {} incoming edges but {} descents",
                    graph.incoming_count(v),
                    q.des()
                )));
            }
        }
        Ok(Self {
            id,
            poset,
            simplices,
            graph,
        })
    }

    pub fn k(&self) -> usize {
        self.id.k
    }

    pub fn n(&self) -> usize {
        self.id.n
    }

    /// Faces of the removed lower facet, one generator per simplex.
    pub fn removed_faces(&self) -> Vec<Vec<usize>> {
        if self.k() == 1 {
            return Vec::new();
        }
        self.simplices
            .iter()
            .map(|s| {
                s.vertices
                    .iter()
                    .copied()
                    .filter(|&v| self.poset.on_lower_hyperplane(v))
                    .collect::<Vec<_>>()
            })
            .filter(|f| !f.is_empty())
            .collect()
    }

    /// The vertex of `node` opposite each incoming facet; a removed lower
    /// facet is opposite the top vertex.
    pub fn incoming_vertices(&self, node: usize) -> Vec<usize> {
        let g = &self.graph;
        let mut out: Vec<usize> = g
            .in_edges(node)
            .map(|e| g.edges()[e].vertex_only_in(node))
            .collect();
        if g.has_phantom(node) {
            out.push(self.simplices[node].top());
        }
        out.sort_unstable();
        out
    }

    /// Verify the shelling along `order`, checking that each restriction face
    /// is spanned by the vertices opposite the incoming facets.
    pub fn shelling_along(&self, order: &[usize]) -> Result<Shelling> {
        let faces: Vec<Vec<usize>> = order
            .iter()
            .map(|&v| self.simplices[v].vertices.clone())
            .collect();
        let steps = shelling_verify(&faces, &self.removed_faces())?;
        for (&v, step) in order.iter().zip(&steps) {
            let expected = self.incoming_vertices(v);
            if step.restriction != expected {
                return Err(Error::Inconsistent(format!(
                    "restriction face of Q-avatar {} is {:?}, expected {:?}",
                    self.graph.node(v).avatars.q,
                    step.restriction,
                    expected
                )));
            }
        }
        Ok(Shelling {
            order: order.to_vec(),
            steps,
        })
    }

    pub fn shelling(&self, tie: TieBreak) -> Result<Shelling> {
        let order = self.graph.topo_order(tie)?;
        self.shelling_along(&order)
    }

    pub fn h_by_shelling(&self) -> Result<HVector> {
        let s = self.shelling(TieBreak::Lexicographic)?;
        Ok(shelling::h_from_steps(self.id, &s.steps))
    }
}

/// `h*` of `Δ'_{k,n}` from a verified shelling of its triangulation.
pub fn h_by_shelling(k: usize, n: usize) -> Result<HVector> {
    Triangulation::build(k, n)?.h_by_shelling()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::{eulerian_number, h_by_statistics};

    #[test]
    fn h_35() {
        let h = h_by_shelling(3, 5).unwrap();
        assert_eq!(h.to_u64s().unwrap(), vec![0, 4, 6, 1]);
    }

    #[test]
    fn small_cases_agree() {
        for n in 2..=6 {
            for k in 1..n {
                let t = Triangulation::build(k, n).unwrap();
                assert_eq!(eulerian_number(n - 1, k).unwrap(), t.simplices.len().into());
                let id = HypersimplexId::half_open(k, n).unwrap();
                assert!(
                    t.h_by_shelling()
                        .unwrap()
                        .same_coeffs(&h_by_statistics(id).unwrap()),
                    "({k},{n})"
                );
            }
        }
    }

    #[test]
    fn seeded_orders_shell() {
        let t = Triangulation::build(3, 6).unwrap();
        let base = t.shelling(TieBreak::Lexicographic).unwrap().numbers();
        for seed in 0..20 {
            assert_eq!(t.shelling(TieBreak::Seeded(seed)).unwrap().numbers(), base);
        }
    }

    #[test]
    fn reversed_edge_breaks_the_shelling_check() {
        let mut t = Triangulation::build(3, 5).unwrap();
        let e = t
            .graph
            .edges()
            .iter()
            .position(|e| e.kind == EdgeKind::TypeOne)
            .unwrap();
        t.graph.flip_edge(e);
        assert!(t.shelling(TieBreak::Lexicographic).is_err());
    }
}
