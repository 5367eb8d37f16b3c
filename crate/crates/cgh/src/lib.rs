//! Combinatorics of tight paths in convex geometric hypergraphs.
//!
//! A *convex geometric hypergraph* (cgh) is an `r`-uniform hypergraph whose
//! vertices sit in convex position on a circle; only the cyclic order of the
//! vertices matters. This crate provides:
//!
//! * the cyclic ground set with segments and arc lengths ([`ground`]),
//! * hypergraphs with shadow, link and neighborhood operators plus a plain
//!   text file format ([`hypergraph`]),
//! * recognition and search for tight paths, zigzag paths, stacks and good
//!   paths ([`patterns`]),
//! * the end-extension counting machinery over path ends ([`extension`]),
//! * explicit extremal families ([`constructions`]),
//! * exact rational evaluation of the known upper bounds ([`bounds`]),
//! * exact extremal numbers at small scale by branch-and-bound search with
//!   isomorph rejection ([`search`]).
//!
//! Everything is deterministic: randomized components (the partition
//! experiment, random instances) run on named seeded generators.

pub mod bounds;
mod comb;
pub mod constructions;
mod error;
pub mod extension;
pub mod ground;
pub mod hypergraph;
pub mod patterns;
pub mod search;

pub use error::{CghError, Result};
pub use ground::CyclicGround;
pub use hypergraph::{Edge, Hypergraph};
pub use patterns::{BlockColoring, PathWitness, PatternKind};
