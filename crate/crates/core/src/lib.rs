//! Exact clique-width of small graphs through SAT.
//!
//! A graph has clique-width at most `k` exactly when it has a `k`-derivation:
//! a chain of partition pairs (components, groups) that coarsens from
//! singletons to a single component while respecting three local
//! conditions on edges. The crate encodes that object as CNF, solves it,
//! decodes the model back into a derivation, converts the derivation into a
//! `k`-expression, and checks everything independently.
//!
//! ```
//! use cwd_core::{clique_width, graph::path, SearchOptions, Backend};
//!
//! let opts = SearchOptions { backend: Backend::Cadical, ..SearchOptions::default() };
//! let cert = clique_width(&path(4), &opts).unwrap();
//! assert_eq!(cert.cwd, Some(3));
//! ```

pub mod derivation;
pub mod encoder;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod kexpr;
pub mod oracle;
pub mod search;
pub mod solver;

pub use derivation::{Derivation, Partition, Template};
pub use encoder::{CnfInstance, Encoding};
pub use error::{Error, Result};
pub use graph::Graph;
pub use kexpr::KExpr;
pub use search::{clique_width, decide_width_at_most, Certificate, SearchOptions, Strategy};
pub use solver::{Backend, SolveResult, Verdict};
