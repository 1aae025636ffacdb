//! Finite prefixes of infinite graph families and independent-set expansion.

mod expansion;
mod family;
mod finite;
mod treecut;

pub use expansion::{doubly_independent_sets, expansion_ratio, min_expansion, mu_auto, mu_bruteforce, MuReport};
pub use family::{grid_coords, GraphFamily};
pub use finite::{FiniteGraph, VertexSet};
pub use treecut::{default_delta, treecut, TreecutReport};
