//! Reconstruction: growing a Hamiltonian sequence out of the mapped `L_e`.

pub mod edges;
mod engine;
mod ops;
pub mod state;

pub use edges::{EdgeEntry, EdgeList, EdgeListError, EdgeStatus};
pub use state::{Counters, EngineConfig, Flags, Incumbent, SolverState, StateSnapshot, VertexLabeling};

/// Control-flow outcomes of the reconstruction operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Signal {
    /// Local dead end; roll back to the latest checkpoint.
    #[error("local backtrack requested")]
    Error,
    /// Abandon this expansion call and restart from a new seed edge.
    #[error("expansion restart requested")]
    Expand,
    /// No seed edge left for the round.
    #[error("no seed edge left")]
    NotFound,
}
