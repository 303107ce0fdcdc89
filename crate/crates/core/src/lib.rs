//! Polynomial reductions of Feedback Vertex Set onto 4-regular planar,
//! Hamiltonian, p-regular and p-Hamiltonian-ordered graph classes, with
//! exact oracles that certify every output.

pub mod error;
pub mod gadgets;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod pipeline;
pub mod oracle;

pub use error::{Error, Result};
