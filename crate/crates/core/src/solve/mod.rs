//! Classical QUBO solvers.
//!
//! [`solve_exhaustive`] enumerates every bit-vector and is the reference for
//! small matrices; [`solve_sa`] is single-flip simulated annealing for
//! everything else. Both break energy ties towards the lexicographically
//! smallest bit-vector.

use crate::qubo::BitVector;

mod anneal;
mod exhaustive;

pub use anneal::{solve_sa, solve_sa_restart, solve_sa_with_trace, SaParams};
pub use exhaustive::{
    ground_states, solve_exhaustive, solve_exhaustive_with_cap, DEFAULT_EXHAUSTIVE_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("exhaustive search over {k} qubits exceeds the cap of {cap}")]
    OverCap { k: usize, cap: usize },
    #[error("simulated annealing needs at least one qubit")]
    Empty,
    #[error("invalid annealing parameters: {0}")]
    InvalidParams(&'static str),
    #[error("more than {limit} ground states")]
    TooManyGroundStates { limit: usize },
}

/// Best bit-vector found by a solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub best: BitVector,
    pub best_energy: i64,
    /// Energies evaluated (full states for exhaustive search, flip proposals
    /// for annealing).
    pub evaluations: u64,
    pub restarts_used: usize,
}

impl SolveResult {
    /// True if `self` has lower energy, or equal energy and a smaller bit-vector.
    pub fn beats(&self, other: &SolveResult) -> bool {
        (self.best_energy, &self.best) < (other.best_energy, &other.best)
    }
}
