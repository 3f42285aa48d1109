//! k-path vertex cover toolkit: exact and approximate solvers, reoptimization
//! under constant-size graph insertion, instance I/O and a verification harness.

pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod kpath;
pub mod par;
pub mod reopt;
pub mod solvers;

pub use error::{Error, Result};
