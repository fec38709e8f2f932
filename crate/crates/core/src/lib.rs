//! Finite prefixes of a seeded random graph on the positive integers.
//!
//! Every edge is a pure function of `(seed, u, v)`, so any finite piece of the
//! graph can be recomputed on demand. On top of the oracle sit type queries,
//! greedy embeddings, universality audits, thick and forcing constructions,
//! and Monte Carlo checks.

pub mod audit;
pub mod canon;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod largeness;
pub mod mc;
pub mod oracle;
pub mod par;
pub mod prf;
pub mod search;
pub mod types;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::FiniteGraph;
pub use oracle::{EdgeOracle, EdgeProbability};
pub use types::{TypeMask, TypeSpec};
pub use vertex_set::VertexSet;
