use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..={len}: {detail}")]
    InvalidPermutation { len: usize, detail: String },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("cannot parse permutation {input:?}: {detail}")]
    Parse { input: String, detail: String },

    #[error("truncation mismatch: ({0}, {1}) vs ({2}, {3})")]
    TruncationMismatch(usize, usize, usize, usize),

    #[error("series has no inverse: constant term is zero")]
    NonUnit,

    #[error("invalid hypersimplex: need 1 <= k <= n-1 and n >= 2, got k={k}, n={n}")]
    InvalidHypersimplex { k: usize, n: usize },

    #[error("Eulerian number A({n},{k}) is undefined: need 1 <= k <= n")]
    EulerianRange { n: usize, k: usize },

    #[error("need at least {need} lattice counts, got {have}")]
    InsufficientCounts { need: usize, have: usize },

    #[error("the excedance statistic describes half-open hypersimplices only")]
    ClosedNotSupported,

    #[error("triangulation inconsistency: {0}")]
    Inconsistent(String),

    #[error("directed cycle in the dual graph through nodes {0:?}")]
    Cycle(Vec<usize>),

    #[error("order is not a shelling at step {step} (simplex {simplex:?}): {reason}")]
    NotShelling {
        step: usize,
        simplex: Vec<usize>,
        reason: String,
    },
}
