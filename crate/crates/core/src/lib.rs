//! Exact-rational decomposition of spanning-tree polytope points into
//! layered convex combinations of Gao-trees.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the
//! command-line front end live in the companion `gaotree-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod chain;
pub mod decompose;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod graph;
pub mod matroid;
pub mod oracle;
pub mod rational;

pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeSet, EdgeVector, Graph, Tree, Vertex, VertexSet};
pub use rational::Rational;
