//! Decide whether the bicircular matroid of a multigraph is signed-graphic.

pub mod graph;
pub mod matroid;
pub mod bicircular;
pub mod signed;
pub mod decider;
pub mod miner;
pub mod selfcheck;
