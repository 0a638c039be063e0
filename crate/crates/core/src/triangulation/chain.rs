//! Simplices of the alcoved triangulation as maximal chains in `V` with
//! distinct cover labels, and the permutations attached to them.

use serde::Serialize;

use super::poset::PosetV;
use crate::perm::Permutation;

/// A maximal simplex written as its vertex expression: `m + 1` poset
/// points from bottom to top, each step incrementing a different coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplexChain {
    /// Indices into [`PosetV::points`].
    pub vertices: Vec<usize>,
    /// Cover labels read along the chain.
    pub label_perm: Permutation,
    /// The lower facet `z_m = k - 1` belongs to this simplex and is removed
    /// from the half-open hypersimplex.
    pub boundary_removed: bool,
}

impl SimplexChain {
    pub fn bottom(&self) -> usize {
        self.vertices[0]
    }

    pub fn top(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn sorted_vertices(&self) -> Vec<usize> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }

    pub fn contains_all(&self, face: &[usize]) -> bool {
        face.iter().all(|x| self.vertices.contains(x))
    }
}

/// The five permutations attached to one simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Avatars {
    pub gamma: Permutation,
    pub r: Permutation,
    pub p: Permutation,
    pub q: Permutation,
    pub s: Permutation,
}

impl Avatars {
    /// From the label permutation: `Γ = rev R`, `P = R⁻¹`, `Q = F⁻¹(P)`, `S = rev Q`.
    pub fn from_label(r: &Permutation) -> Self {
        let p = r.inverse();
        let q = p.foata_inverse();
        Self {
            gamma: r.reverse_map(),
            r: r.clone(),
            s: q.reverse_map(),
            p,
            q,
        }
    }

    pub fn get(&self, which: AvatarKind) -> &Permutation {
        match which {
            AvatarKind::Gamma => &self.gamma,
            AvatarKind::R => &self.r,
            AvatarKind::P => &self.p,
            AvatarKind::Q => &self.q,
            AvatarKind::S => &self.s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AvatarKind {
    Gamma,
    R,
    P,
    Q,
    S,
}

impl AvatarKind {
    pub fn name(self) -> &'static str {
        match self {
            AvatarKind::Gamma => "gamma",
            AvatarKind::R => "r",
            AvatarKind::P => "p",
            AvatarKind::Q => "q",
            AvatarKind::S => "s",
        }
    }
}

impl std::str::FromStr for AvatarKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gamma" | "g" => Ok(AvatarKind::Gamma),
            "r" => Ok(AvatarKind::R),
            "p" => Ok(AvatarKind::P),
            "q" => Ok(AvatarKind::Q),
            "s" => Ok(AvatarKind::S),
            other => Err(format!(
                "unknown graph {other:?}; expected q, p, r, gamma or s"
            )),
        }
    }
}

/// Cover labels along a chain of points.
pub fn label_permutation(poset: &PosetV, vertices: &[usize]) -> Permutation {
    let labels = vertices
        .windows(2)
        .map(|w| {
            let (a, b) = (poset.point(w[0]).coords(), poset.point(w[1]).coords());
            let coord = (0..a.len())
                .find(|&i| a[i] != b[i])
                .expect("consecutive chain points differ")
                + 1;
            poset.label_of_coord(coord)
        })
        .collect();
    Permutation::new(labels).expect("chain labels are distinct")
}

/// Every maximal chain of `V` whose covers carry distinct labels.
pub fn enumerate_simplices(poset: &PosetV) -> Vec<SimplexChain> {
    let m = poset.m();
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(m + 1);
    for start in 0..poset.points().len() {
        chain.clear();
        chain.push(start);
        extend(poset, &mut chain, 0, &mut out);
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

fn extend(poset: &PosetV, chain: &mut Vec<usize>, used: u64, out: &mut Vec<SimplexChain>) {
    let m = poset.m();
    if chain.len() == m + 1 {
        let label_perm = label_permutation(poset, chain);
        let k = poset.k();
        let lower = chain
            .iter()
            .filter(|&&v| poset.on_lower_hyperplane(v))
            .count();
        out.push(SimplexChain {
            vertices: chain.clone(),
            label_perm,
            boundary_removed: k > 1 && lower == m,
        });
        return;
    }
    let last = *chain.last().unwrap();
    for coord in 1..=m {
        if used & (1 << coord) != 0 {
            continue;
        }
        if let Some(next) = poset.step(last, coord) {
            chain.push(next);
            extend(poset, chain, used | (1 << coord), out);
            chain.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::poset::{build_poset, ZPoint};
    use std::collections::BTreeSet;

    fn idx(v: &PosetV, z: &[usize]) -> usize {
        v.index_of(&ZPoint(z.to_vec())).unwrap()
    }

    #[test]
    fn census_35() {
        let v = build_poset(3, 5).unwrap();
        let simplices = enumerate_simplices(&v);
        assert_eq!(simplices.len(), 11);
        let labels: BTreeSet<String> = simplices.iter().map(|s| s.label_perm.to_string()).collect();
        let expected: BTreeSet<String> = [
            "1432", "4132", "2143", "4312", "3214", "2431", "3241", "2413", "4213", "4231", "3421",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(labels, expected);
    }

    #[test]
    fn hfcba_reads_4132() {
        let v = build_poset(3, 5).unwrap();
        let hfcba: Vec<usize> = [
            [0, 1, 2, 2],
            [1, 1, 2, 2],
            [1, 1, 2, 3],
            [1, 2, 2, 3],
            [1, 2, 3, 3],
        ]
        .iter()
        .map(|z| idx(&v, z))
        .collect();
        let simplices = enumerate_simplices(&v);
        let s = simplices.iter().find(|s| s.vertices == hfcba).unwrap();
        assert_eq!(s.label_perm.to_string(), "4132");
        assert!(!s.boundary_removed);
    }

    #[test]
    fn boundary_flags_35() {
        let v = build_poset(3, 5).unwrap();
        let flagged: BTreeSet<String> = enumerate_simplices(&v)
            .iter()
            .filter(|s| s.boundary_removed)
            .map(|s| s.label_perm.to_string())
            .collect();
        let want: BTreeSet<String> = ["2431", "3241", "4231", "3421"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(flagged, want);
    }

    #[test]
    fn single_simplex_for_k1() {
        for n in 2..6 {
            let v = build_poset(1, n).unwrap();
            let simplices = enumerate_simplices(&v);
            assert_eq!(simplices.len(), 1);
            assert!(!simplices[0].boundary_removed);
            assert_eq!(simplices[0].label_perm.inverse().des(), 0);
        }
    }

    #[test]
    fn avatar_chain() {
        let a = Avatars::from_label(&"4132".parse().unwrap());
        assert_eq!(a.p.to_string(), "2431");
        let a = Avatars::from_label(&"1342".parse().unwrap());
        assert_eq!(a.gamma.to_string(), "3124");
        assert_eq!(a.p.to_string(), "1423");
        assert_eq!(a.q.to_string(), "1342");
        assert_eq!(a.s.to_string(), "3124");
    }
}
