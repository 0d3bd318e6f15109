//! Exact strength indicators for facets of the TSP, spanning-tree and
//! hypergraph spanning-tree polytopes, plus the brute-force machinery used to
//! check them.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod closedforms;
pub mod combinatorics;
pub mod enumeration;
mod error;
pub mod exactnum;
pub mod geometry;

pub use error::Error;
pub use exactnum::{ExactScalar, LogScalar};
