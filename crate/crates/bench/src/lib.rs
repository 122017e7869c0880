//! Fixtures shared by the benchmarks.

use cwd_core::graph::{generate_named, Graph};

/// Named graphs small enough to solve inside a benchmark iteration, with
/// their clique-width.
pub fn solvable() -> Vec<(&'static str, Graph, usize)> {
    [("petersen", 5), ("frucht", 5), ("chvatal", 5)]
        .into_iter()
        .map(|(name, k)| (name, generate_named(name, &[]).expect("catalog graph"), k))
        .collect()
}
