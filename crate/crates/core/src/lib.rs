//! k-ary cuckoo hashing with random-walk insertion, and the hypergraph
//! machinery that explains when it works and how fast: threshold and
//! walk-exponent solvers, orientability via bipartite matching, 2-core
//! stripping against analytic size predictions, density and expansion
//! checkers, and a deterministic experiment harness.

#![forbid(unsafe_code)]

pub mod analytics;
pub mod error;
pub mod harness;
pub mod hashspace;
pub mod hypergraph;
pub mod table;

pub use error::{Error, Result};
