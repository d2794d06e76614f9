//! Hamiltonian path and cycle search by path reconstruction with restarts,
//! plus instrumentation of the search trajectory.
//!
//! The pipeline is [`mapping`] (an initial path cover) followed by rounds of
//! the [`policy`] controller driving the [`reconstruct`] engine. [`chaos`]
//! analyses the recorded trajectory and [`bench`] runs instance sets.

pub mod articulation;
pub mod bench;
pub mod chaos;
pub mod graph;
pub mod io;
pub mod mapping;
pub mod policy;
pub mod reconstruct;
pub mod report;

pub use graph::Graph;
pub use io::SequenceKind;
pub use policy::{solve, PolicyConfig, RunReport};
