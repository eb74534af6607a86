//! Exact SNT-rank of pattern graphs.
//!
//! The SNT-rank `st₊(G)` of a graph with loops is the least inner dimension
//! `k` of a factorization `A = B·C·Bᵀ` with nonnegative `B` and symmetric
//! nonnegative `C`, over matrices `A` whose zero pattern is `G`. It equals
//! the minimum order of a set-join cover of `G`; this crate computes that
//! minimum, builds certificates, and converts them to witness factors.

pub mod bitset;
pub mod cli;
pub mod closed_form;
pub mod cover;
pub mod error;
pub mod factor;
pub mod graph;
pub mod matching;
pub mod solver;
pub mod uniqueness;

pub use bitset::VertexSet;
pub use cover::{Component, Cover, CoverBuilder, CoverReport};
pub use error::{Error, Result};
pub use graph::{Graph, Permutation};
pub use solver::{snt_rank_exact, SolveResult, SolverOptions, Status};
