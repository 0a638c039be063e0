//! Big and small blocks of the oriented dual graph, move classification, and
//! the ascending representative of a letter-transposition orbit.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::perm::{IndexSet, Permutation};

/// Partial order on index sets: fewer elements first; equal sizes compare
/// elementwise in sorted order and are comparable only when one dominates.
pub fn compare_sets(a: &IndexSet, b: &IndexSet) -> Option<Ordering> {
    if a == b {
        return Some(Ordering::Equal);
    }
    match a.len().cmp(&b.len()) {
        Ordering::Equal => {}
        other => return Some(other),
    }
    let le = a.iter().zip(b.iter()).all(|(x, y)| x <= y);
    let ge = a.iter().zip(b.iter()).all(|(x, y)| x >= y);
    match (le, ge) {
        (true, _) => Some(Ordering::Less),
        (_, true) => Some(Ordering::Greater),
        _ => None,
    }
}

/// Small block `s_{I,J}`: `I = Des(P)`, `J = Rexc(Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub big: IndexSet,
    pub small: IndexSet,
}

impl Block {
    pub fn new(big: IndexSet, small: IndexSet) -> Self {
        Self { big, small }
    }
}

impl PartialOrd for Block {
    /// `s_{I,J} < s_{I',J'}` iff `I < I'`, or `I = I'` and `J > J'`.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match compare_sets(&self.big, &other.big)? {
            Ordering::Equal => compare_sets(&other.small, &self.small),
            ord => Some(ord),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.big, self.small)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Backward,
    Forward,
    Neither,
}

/// `e_i` is a backward move for `J` if `i ∈ J, i+1 ∉ J`, forward if
/// `i ∉ J, i+1 ∈ J`. Indices past the end count as absent.
pub fn classify_move(j: &IndexSet, i: usize) -> Move {
    match (j.contains(i), j.contains(i + 1)) {
        (true, false) => Move::Backward,
        (false, true) => Move::Forward,
        _ => Move::Neither,
    }
}

/// Sizes of the value intervals permuted freely by `t_i, i ∈ I`.
pub fn region_composition(m: usize, ascents: &IndexSet) -> Vec<usize> {
    let mut parts = vec![1];
    for i in 1..m {
        if ascents.contains(i) {
            *parts.last_mut().unwrap() += 1;
        } else {
            parts.push(1);
        }
    }
    parts
}

/// Region index (0-based, in value order) of every letter `1..=m`.
fn region_of_values(m: usize, ascents: &IndexSet) -> Vec<usize> {
    let mut region = vec![0; m + 1];
    let mut r = 0;
    for (x, slot) in region.iter_mut().enumerate().skip(1) {
        if x > 1 && !ascents.contains(x - 1) {
            r += 1;
        }
        *slot = r;
    }
    region
}

/// `w` with each letter replaced by its region (`0` = `a`, ...).
pub fn region_word(w: &Permutation, ascents: &IndexSet) -> Vec<usize> {
    let region = region_of_values(w.len(), ascents);
    w.letters().iter().map(|&x| region[x]).collect()
}

/// Split a word before every strict left-to-right maximum; returns the
/// ranges of the resulting cycles.
pub fn word_cycles(word: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for p in 1..word.len() {
        if word[p] > word[start..p].iter().copied().max().unwrap() {
            out.push(start..p);
            start = p;
        }
    }
    if !word.is_empty() {
        out.push(start..word.len());
    }
    out
}

/// Render a region word with letters `a, b, c, ...` and its cycles.
pub fn render_region_word(word: &[usize]) -> (String, String) {
    let letter = |r: usize| char::from(b'a' + r as u8);
    let plain: String = word.iter().map(|&r| letter(r)).collect();
    let cycles: String = word_cycles(word)
        .into_iter()
        .map(|range| {
            format!(
                "({})",
                word[range].iter().map(|&r| letter(r)).collect::<String>()
            )
        })
        .collect();
    (plain, cycles)
}

/// Factor `word` into words that each strictly exceed all their proper
/// rotations, with non-decreasing factors (Duval's algorithm run on the
/// reversed letter order).
fn max_rotation_factorization(word: &[usize]) -> Vec<std::ops::Range<usize>> {
    let n = word.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && word[k] >= word[j] {
            if word[k] > word[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(i..i + j - k);
            i += j - k;
        }
    }
    out
}

/// The unique member `u` of the orbit of `w` under `t_i, i ∈ I`, such that
/// `F⁻¹(u)` ascends at every position of `I`.
///
/// Letters are replaced by their regions; the word is cut into cycles at its
/// left-to-right maxima, ties of a cycle's leading letter refine the cycle
/// into its max-rotation factors, and the occurrences of each region are then
/// ranked by the letters they are sent to, following the cycle. Occurrences
/// with identical itineraries (repeated factors) are numbered left to right.
pub fn unique_ascending_representative(w: &Permutation, ascents: &IndexSet) -> Permutation {
    let m = w.len();
    let word = region_word(w, ascents);

    let mut cycles: Vec<std::ops::Range<usize>> = Vec::new();
    for c in word_cycles(&word) {
        for f in max_rotation_factorization(&word[c.clone()]) {
            cycles.push(c.start + f.start..c.start + f.end);
        }
    }
    let mut cycle_of = vec![0; m];
    for (ci, c) in cycles.iter().enumerate() {
        for p in c.clone() {
            cycle_of[p] = ci;
        }
    }
    let itinerary = |p: usize, len: usize| -> Vec<usize> {
        let c = &cycles[cycle_of[p]];
        let period = c.len();
        (1..=len)
            .map(|step| word[c.start + (p - c.start + step) % period])
            .collect()
    };

    let regions = region_composition(m, ascents);
    let mut first_value = Vec::with_capacity(regions.len());
    let mut acc = 1;
    for &size in &regions {
        first_value.push(acc);
        acc += size;
    }

    let mut letters = vec![0; m];
    for (r, &base) in first_value.iter().enumerate() {
        let mut occ: Vec<usize> = (0..m).filter(|&p| word[p] == r).collect();
        occ.sort_by(|&p, &q| {
            let len = cycles[cycle_of[p]].len() + cycles[cycle_of[q]].len();
            itinerary(p, len).cmp(&itinerary(q, len)).then(p.cmp(&q))
        });
        for (rank, p) in occ.into_iter().enumerate() {
            letters[p] = base + rank;
        }
    }
    Permutation::new(letters).expect("standardized word is a permutation")
}

/// Whether `v` ascends at every position of `ascents`.
pub fn ascends_on(v: &Permutation, ascents: &IndexSet) -> bool {
    ascents.iter().all(|i| v.at(i) < v.at(i + 1))
}
