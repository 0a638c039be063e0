pub mod ehrhart;
pub mod error;
pub mod perm;
pub mod series;
pub mod triangulation;
pub mod verify;

pub use ehrhart::{HVector, HypersimplexId, JointTable};
pub use error::{Error, Result};
pub use perm::{CycleDecomposition, IndexSet, Permutation};
pub use series::{BivariateSeries, IntPolynomial};
pub use triangulation::{DualGraph, SimplexChain, Triangulation};
