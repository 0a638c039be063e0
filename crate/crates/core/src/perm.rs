//! Permutations of `{1..m}` in one-line notation, with the statistics and
//! bijections used throughout the crate.
//!
//! Positions and letters are 1-based at the interface. A permutation `w` is
//! stored as its one-line word `w_1 w_2 ... w_m`; `w.at(i)` is `w(i)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of positive integers kept as a strictly increasing sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn insert(&mut self, i: usize) -> bool {
        match self.0.binary_search(&i) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, i);
                true
            }
        }
    }

    pub fn remove(&mut self, i: usize) -> bool {
        match self.0.binary_search(&i) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| !other.contains(i))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        self.iter().filter(|&i| other.contains(i)).collect()
    }

    /// Bitmask view with bit `i` set for each member `i`. Members must be < 64.
    pub fn bitmask(&self) -> u64 {
        self.iter().fold(0u64, |acc, i| {
            assert!(i < 64, "bitmask view needs members below 64");
            acc | (1u64 << i)
        })
    }

    /// `{1..=m}`.
    pub fn full(m: usize) -> IndexSet {
        (1..=m).collect()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl<const N: usize> From<[usize; N]> for IndexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (j, i) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Cycle notation in standard form: each cycle starts with its largest
/// letter, and cycles are listed by increasing largest letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Cycle lengths, in standard order.
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.cycles.iter().flatten().any(|&x| x > 9);
        for c in &self.cycles {
            f.write_str("(")?;
            for (j, x) in c.iter().enumerate() {
                if wide && j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A bijection of `{1..m}`, `m >= 1`, in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    letters: Vec<usize>,
}

impl Permutation {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        let m = letters.len();
        if m == 0 {
            return Err(Error::InvalidPermutation {
                len: 0,
                detail: "empty word".into(),
            });
        }
        let mut seen = vec![false; m + 1];
        for &x in &letters {
            if x == 0 || x > m {
                return Err(Error::InvalidPermutation {
                    len: m,
                    detail: format!("letter {x} out of range"),
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation {
                    len: m,
                    detail: format!("letter {x} repeated"),
                });
            }
        }
        Ok(Self { letters })
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<usize>) -> Self {
        debug_assert!(Self::new(letters.clone()).is_ok());
        Self { letters }
    }

    pub fn identity(m: usize) -> Self {
        assert!(m >= 1, "permutations need m >= 1");
        Self {
            letters: (1..=m).collect(),
        }
    }

    /// A uniformly random permutation of `{1..m}`.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut p = Self::identity(m);
        p.letters.shuffle(rng);
        p
    }

    /// All of `S_m` in lexicographic order.
    pub fn all(m: usize) -> AllPermutations {
        AllPermutations {
            next: Some(Self::identity(m)),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// `w(i)` for a 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.letters[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().enumerate().all(|(j, &x)| x == j + 1)
    }

    /// `{i : w_i > w_{i+1}}`.
    pub fn descent_set(&self) -> IndexSet {
        IndexSet(
            (1..self.len())
                .filter(|&i| self.at(i) > self.at(i + 1))
                .collect(),
        )
    }

    pub fn des(&self) -> usize {
        self.letters.windows(2).filter(|p| p[0] > p[1]).count()
    }

    /// `{i : w_i > i}`.
    pub fn excedance_set(&self) -> IndexSet {
        IndexSet((1..=self.len()).filter(|&i| self.at(i) > i).collect())
    }

    pub fn exc(&self) -> usize {
        (1..=self.len()).filter(|&i| self.at(i) > i).count()
    }

    /// `{i : w_i < i}`.
    pub fn reverse_excedance_set(&self) -> IndexSet {
        IndexSet((1..=self.len()).filter(|&i| self.at(i) < i).collect())
    }

    pub fn rexc(&self) -> usize {
        (1..=self.len()).filter(|&i| self.at(i) < i).count()
    }

    /// Letters sitting at descent positions.
    pub fn leading_descent_set(&self) -> IndexSet {
        self.descent_set().iter().map(|i| self.at(i)).collect()
    }

    /// Split `{1..m-1}` by how `i` and `i+1` meet the reverse excedance set:
    /// `A` has `i` out and `i+1` in, `B` has `i` in and `i+1` out, `C` the rest.
    pub fn abc_decomposition(&self) -> (IndexSet, IndexSet, IndexSet) {
        let rexc = self.reverse_excedance_set();
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for i in 1..self.len() {
            match (rexc.contains(i), rexc.contains(i + 1)) {
                (false, true) => a.push(i),
                (true, false) => b.push(i),
                _ => c.push(i),
            }
        }
        (IndexSet(a), IndexSet(b), IndexSet(c))
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let m = self.len();
        let mut seen = vec![false; m + 1];
        let mut cycles = Vec::new();
        // Scanning from the top picks each cycle's maximum first.
        for start in (1..=m).rev() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.at(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.at(x);
            }
            cycles.push(cycle);
        }
        cycles.reverse();
        CycleDecomposition { cycles }
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        self.cycle_decomposition().lengths()
    }

    /// Erase the parentheses of the standard cycle notation.
    pub fn foata(&self) -> Permutation {
        let letters = self.cycle_decomposition().cycles.concat();
        Self::from_vec_unchecked(letters)
    }

    /// Open a cycle at every left-to-right maximum and read the cycles.
    pub fn foata_inverse(&self) -> Permutation {
        let m = self.len();
        let mut out = vec![0; m];
        let mut start = 0;
        let mut running_max = 0;
        for (j, &x) in self.letters.iter().enumerate() {
            if x > running_max && j > 0 {
                close_cycle(&self.letters[start..j], &mut out);
                start = j;
            }
            running_max = running_max.max(x);
        }
        close_cycle(&self.letters[start..], &mut out);
        Self::from_vec_unchecked(out)
    }

    /// `w(m+1-i) = m+1-u(i)`: complement letters, then reverse positions.
    pub fn reverse_map(&self) -> Permutation {
        let m = self.len();
        let mut out = vec![0; m];
        for i in 1..=m {
            out[m - i] = m + 1 - self.at(i);
        }
        Self::from_vec_unchecked(out)
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.len()];
        for (j, &x) in self.letters.iter().enumerate() {
            out[x - 1] = j + 1;
        }
        Self::from_vec_unchecked(out)
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Self::from_vec_unchecked(other.letters.iter().map(|&x| self.at(x)).collect())
    }

    fn check_adjacent_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.len().saturating_sub(1),
            });
        }
        Ok(())
    }

    /// `t_i`: exchange the letters `i` and `i+1`.
    pub fn swap_letters(&self, i: usize) -> Result<Permutation> {
        self.check_adjacent_index(i)?;
        let letters = self
            .letters
            .iter()
            .map(|&x| match x {
                x if x == i => i + 1,
                x if x == i + 1 => i,
                x => x,
            })
            .collect();
        Ok(Self::from_vec_unchecked(letters))
    }

    /// `s_i`: exchange the entries in positions `i` and `i+1`.
    pub fn swap_positions(&self, i: usize) -> Result<Permutation> {
        self.check_adjacent_index(i)?;
        let mut letters = self.letters.clone();
        letters.swap(i - 1, i);
        Ok(Self::from_vec_unchecked(letters))
    }

    /// Position of letter `x` (1-based).
    pub fn position_of(&self, x: usize) -> usize {
        self.letters
            .iter()
            .position(|&y| y == x)
            .expect("letter in range")
            + 1
    }

    pub fn inversion_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.letters[i] > self.letters[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Inversions `(w_i, w_j)`, `i < j`, whose whole span of adjacent
    /// position pairs `i, i+1, ..., j-1` lies in `edges`.
    pub fn inversion_count_restricted(&self, edges: &IndexSet) -> usize {
        let mut count = 0;
        let mut block_start = 0;
        for j in 0..self.len() {
            // Position j+1 (1-based) joins the current block iff edge j is allowed.
            if j > 0 && !edges.contains(j) {
                block_start = j;
            }
            count += self.letters[block_start..j]
                .iter()
                .filter(|&&x| x > self.letters[j])
                .count();
        }
        count
    }
}

fn close_cycle(cycle: &[usize], out: &mut [usize]) {
    for (j, &x) in cycle.iter().enumerate() {
        out[x - 1] = cycle[(j + 1) % cycle.len()];
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for x in &self.letters {
                write!(f, "{x}")?;
            }
        } else {
            for (j, x) in self.letters.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_err = |detail: String| Error::Parse {
            input: s.to_string(),
            detail,
        };
        let letters: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("{t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| parse_err(format!("unexpected character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(letters)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Lexicographic enumeration of `S_m`.
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut a = current.letters.clone();
        let n = a.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| a[i] < a[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| a[j] > a[i]).unwrap();
                a.swap(i, j);
                a[i + 1..].reverse();
                self.next = Some(Permutation { letters: a });
            }
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set<const N: usize>(a: [usize; N]) -> IndexSet {
        IndexSet::from(a)
    }

    #[test]
    fn descent_sets() {
        assert!(Permutation::identity(6).descent_set().is_empty());
        assert_eq!(p("43521").descent_set(), set([1, 3, 4]));
        assert_eq!(p("21").descent_set(), set([1]));
    }

    #[test]
    fn excedance_sets() {
        assert_eq!(p("43251").excedance_set(), set([1, 2, 4]));
        assert!(Permutation::identity(5).excedance_set().is_empty());
        assert_eq!(p("2341").excedance_set(), set([1, 2, 3]));
    }

    #[test]
    fn reverse_excedance_sets() {
        assert_eq!(p("51432").reverse_excedance_set(), set([2, 4, 5]));
        assert!(Permutation::identity(4).reverse_excedance_set().is_empty());
        assert_eq!(p("541263879").reverse_excedance_set(), set([3, 4, 6, 8]));
    }

    #[test]
    fn leading_descents() {
        assert_eq!(p("43521").leading_descent_set(), set([2, 4, 5]));
        assert!(Permutation::identity(3).leading_descent_set().is_empty());
        assert_eq!(p("21").leading_descent_set(), set([2]));
    }

    #[test]
    fn abc() {
        let (a, b, c) = p("541263879").abc_decomposition();
        assert_eq!((a, b, c), (set([2, 5, 7]), set([4, 6, 8]), set([1, 3])));
        let (a, b, c) = Permutation::identity(5).abc_decomposition();
        assert!(a.is_empty() && b.is_empty());
        assert_eq!(c, set([1, 2, 3, 4]));
        assert_eq!(p("21").abc_decomposition(), (set([1]), set([]), set([])));
    }

    #[test]
    fn foata_examples() {
        assert_eq!(p("51432").foata(), p("43521"));
        assert_eq!(Permutation::identity(5).foata(), Permutation::identity(5));
        assert_eq!(p("21").foata(), p("21"));
        assert_eq!(p("43521").foata_inverse(), p("51432"));
        assert_eq!(
            Permutation::identity(4).foata_inverse(),
            Permutation::identity(4)
        );
        assert_eq!(p("1423").foata_inverse(), p("1342"));
    }

    #[test]
    fn standard_cycle_notation() {
        assert_eq!(p("51432").cycle_decomposition().to_string(), "(43)(521)");
        assert_eq!(p("51432").cycle_type(), vec![2, 3]);
        assert_eq!(Permutation::identity(3).cycle_type(), vec![1, 1, 1]);
        assert_eq!(p("4321").cycle_type(), vec![2, 2]);
        assert_eq!(p("4321").cycle_decomposition().to_string(), "(32)(41)");
    }

    #[test]
    fn reverse_and_inverse() {
        assert_eq!(p("43251").reverse_map(), p("51432"));
        assert_eq!(
            Permutation::identity(7).reverse_map(),
            Permutation::identity(7)
        );
        assert_eq!(p("3124").reverse_map(), p("1342"));
        assert_eq!(p("3124").inverse(), p("2314"));
        assert_eq!(p("1342").inverse(), p("1423"));
        assert_eq!(Permutation::identity(3).inverse(), Permutation::identity(3));
    }

    #[test]
    fn transpositions() {
        assert_eq!(p("3412").swap_letters(3).unwrap(), p("4312"));
        assert_eq!(Permutation::identity(4).swap_letters(1).unwrap(), p("2134"));
        assert_eq!(p("4312").swap_positions(3).unwrap(), p("4321"));
        assert_eq!(
            p("2134").swap_positions(1).unwrap(),
            Permutation::identity(4)
        );
        assert_eq!(
            p("3412").swap_letters(4),
            Err(Error::IndexOutOfRange { index: 4, max: 3 })
        );
        assert!(p("3412").swap_positions(0).is_err());
        assert!(p("1").swap_letters(1).is_err());
    }

    #[test]
    fn restricted_inversions() {
        let w = p("361452798");
        assert_eq!(w.inversion_count_restricted(&set([2, 3, 5])), 3);
        assert_eq!(w.inversion_count_restricted(&IndexSet::new()), 0);
        assert_eq!(
            w.inversion_count_restricted(&IndexSet::full(8)),
            w.inversion_count()
        );
        assert_eq!(
            Permutation::identity(6).inversion_count_restricted(&IndexSet::full(5)),
            0
        );
    }

    #[test]
    fn degenerate_single_letter() {
        let one = Permutation::identity(1);
        assert!(one.descent_set().is_empty());
        assert!(one.excedance_set().is_empty());
        assert!(one.reverse_excedance_set().is_empty());
        assert_eq!(one.abc_decomposition(), (set([]), set([]), set([])));
        assert_eq!(one.foata(), one);
        assert_eq!(one.reverse_map(), one);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("43521").to_string(), "43521");
        let wide = p("10,9,8,7,6,5,4,3,2,1");
        assert_eq!(wide.len(), 10);
        assert_eq!(wide.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(p("4,3,5,2,1"), p("43521"));
        assert!("4352".parse::<Permutation>().is_err());
        assert!("4a21".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        let json = serde_json::to_string(&p("2431")).unwrap();
        assert_eq!(json, "\"2431\"");
        assert_eq!(
            serde_json::from_str::<Permutation>(&json).unwrap(),
            p("2431")
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(1).count(), 1);
        assert_eq!(Permutation::all(4).count(), 24);
        let all: Vec<_> = Permutation::all(3).map(|w| w.to_string()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn bitmask_view() {
        assert_eq!(set([1, 3]).bitmask(), 0b1010);
    }
}
