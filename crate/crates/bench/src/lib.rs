//! Shared inputs for the benchmarks.

/// `(⌈n/2⌉, n)`, clamped to a valid `k`.
pub fn middle(n: usize) -> (usize, usize) {
    (n.div_ceil(2).max(1).min(n - 1), n)
}
