//! Exact and numerical simulators for quantum, generalized and counter
//! automata, with builders for the standard witness machines.

pub mod alphabet;
pub mod bca;
pub mod constructions;
pub mod error;
pub mod gfa;
pub mod harness;
pub mod languages;
pub mod multihead;
pub mod numerics;
pub mod qruntime;

pub use error::{Error, Result};
