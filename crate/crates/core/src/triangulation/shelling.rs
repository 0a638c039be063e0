//! Shelling verification by explicit face bookkeeping.

use std::collections::HashSet;

use crate::ehrhart::{HVector, HypersimplexId};
use crate::error::{Error, Result};

/// One step of a verified shelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingStep {
    /// Sorted vertex ids of the simplex.
    pub simplex: Vec<usize>,
    /// The unique minimal face not present before this step.
    pub restriction: Vec<usize>,
}

impl ShellingStep {
    /// Number of facets of the simplex already present, `#(α)`.
    pub fn shelling_number(&self) -> usize {
        self.restriction.len()
    }
}

fn subset(vertices: &[usize], mask: usize) -> Vec<usize> {
    vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

/// Check that `order` (simplices as vertex lists) is a shelling of the
/// complex relative to the faces in `preseen`, whose subsets are treated as
/// already present.
///
/// Each simplex must add its faces as an interval: among the faces not yet
/// present there has to be exactly one minimal one.
pub fn shelling_verify(order: &[Vec<usize>], preseen: &[Vec<usize>]) -> Result<Vec<ShellingStep>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let insert_faces = |seen: &mut HashSet<Vec<usize>>, vertices: &[usize]| {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        for mask in 0..1usize << v.len() {
            seen.insert(subset(&v, mask));
        }
    };
    for face in preseen {
        insert_faces(&mut seen, face);
    }

    let mut steps = Vec::with_capacity(order.len());
    for (step, simplex) in order.iter().enumerate() {
        let mut v = simplex.clone();
        v.sort_unstable();
        let d = v.len();
        let unseen = |mask: usize| !seen.contains(&subset(&v, mask));
        let minimal: Vec<usize> = (0..1usize << d)
            .filter(|&mask| unseen(mask))
            .filter(|&mask| (0..d).all(|i| mask >> i & 1 == 0 || !unseen(mask & !(1 << i))))
            .collect();
        if minimal.len() != 1 {
            let reason = if minimal.is_empty() {
                "every face is already present".to_string()
            } else {
                let faces: Vec<Vec<usize>> = minimal.iter().map(|&mask| subset(&v, mask)).collect();
                format!("several minimal new faces {faces:?}")
            };
            return Err(Error::NotShelling {
                step,
                simplex: v,
                reason,
            });
        }
        let restriction = subset(&v, minimal[0]);
        insert_faces(&mut seen, &v);
        steps.push(ShellingStep {
            simplex: v,
            restriction,
        });
    }
    Ok(steps)
}

/// `h*` as the distribution of shelling numbers.
pub fn h_from_steps(id: HypersimplexId, steps: &[ShellingStep]) -> HVector {
    let mut h = vec![0u64; id.n.max(1)];
    for s in steps {
        h[s.shelling_number()] += 1;
    }
    HVector::from_u64s(id, &h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_shelling() {
        let order = vec![vec![0, 4, 1], vec![1, 2, 4], vec![3, 2, 4], vec![0, 3, 4]];
        let steps = shelling_verify(&order, &[]).unwrap();
        let numbers: Vec<usize> = steps.iter().map(|s| s.shelling_number()).collect();
        assert_eq!(numbers, vec![0, 1, 1, 2]);
        assert_eq!(steps[3].restriction, vec![0, 3]);
    }

    #[test]
    fn toy_non_shelling() {
        let order = vec![vec![0, 1, 2], vec![0, 3, 4]];
        match shelling_verify(&order, &[]) {
            Err(Error::NotShelling { step, .. }) => assert_eq!(step, 1),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn repeated_simplex_is_rejected() {
        let order = vec![vec![0, 1], vec![1, 0]];
        assert!(shelling_verify(&order, &[]).is_err());
    }

    #[test]
    fn preseen_faces_count() {
        let steps = shelling_verify(&[vec![0, 1, 2]], &[vec![0, 1]]).unwrap();
        assert_eq!(steps[0].restriction, vec![2]);
    }
}
