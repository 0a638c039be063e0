//! Lattice points of `Δ_{k,n}` in partial-sum coordinates `z_i = x_1 + ... + x_i`,
//! ordered componentwise, with labeled covers.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::ehrhart::HypersimplexId;
use crate::error::Result;

/// An integer point `(z_1, ..., z_m)` with `0 <= z_1 <= 1`,
/// `0 <= z_{i+1} - z_i <= 1` and `k-1 <= z_m <= k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ZPoint(pub Vec<usize>);

impl ZPoint {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    /// `z_m`, the coordinate sum in the original coordinates.
    pub fn level(&self) -> usize {
        *self.0.last().expect("non-empty point")
    }

    pub fn dominates(&self, other: &ZPoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{z}")?;
        }
        f.write_str(")")
    }
}

/// A cover `to = from + e_i`, labeled `m + 1 - i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

#[derive(Debug, Clone)]
pub struct PosetV {
    k: usize,
    m: usize,
    points: Vec<ZPoint>,
    index: HashMap<ZPoint, usize>,
    covers: Vec<Cover>,
}

impl PosetV {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of coordinates, `n - 1`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[ZPoint] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &ZPoint {
        &self.points[idx]
    }

    pub fn index_of(&self, z: &ZPoint) -> Option<usize> {
        self.index.get(z).copied()
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Whether a point lies on the hyperplane `z_m = k - 1`.
    pub fn on_lower_hyperplane(&self, idx: usize) -> bool {
        self.points[idx].level() + 1 == self.k
    }

    /// `point + e_coord` if it stays in the poset (`coord` is 1-based).
    pub fn step(&self, idx: usize, coord: usize) -> Option<usize> {
        let mut z = self.points[idx].0.clone();
        z[coord - 1] += 1;
        self.index_of(&ZPoint(z))
    }

    /// Cover label of the step that increments coordinate `coord`.
    pub fn label_of_coord(&self, coord: usize) -> usize {
        self.m + 1 - coord
    }
}

/// All lattice points of the closed hypersimplex `Δ_{k,n}` and their covers.
pub fn build_poset(k: usize, n: usize) -> Result<PosetV> {
    HypersimplexId::closed(k, n)?;
    let m = n - 1;
    let mut points = Vec::new();
    // z is the prefix sum of a 0/1 increment vector with total k-1 or k.
    for mask in 0u64..(1u64 << m) {
        let total = mask.count_ones() as usize;
        if total + 1 != k && total != k {
            continue;
        }
        let mut z = Vec::with_capacity(m);
        let mut acc = 0;
        for i in 0..m {
            acc += ((mask >> i) & 1) as usize;
            z.push(acc);
        }
        points.push(ZPoint(z));
    }
    points.sort();
    let index: HashMap<ZPoint, usize> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut poset = PosetV {
        k,
        m,
        points,
        index,
        covers: Vec::new(),
    };
    let mut covers = Vec::new();
    for from in 0..poset.points.len() {
        for coord in 1..=m {
            if let Some(to) = poset.step(from, coord) {
                covers.push(Cover {
                    from,
                    to,
                    label: poset.label_of_coord(coord),
                });
            }
        }
    }
    poset.covers = covers;
    Ok(poset)
}
