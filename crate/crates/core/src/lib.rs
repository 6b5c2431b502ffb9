//! Translations of 3-SAT / MAX-3-SAT instances into QUBO matrices, together
//! with the decoders that map QUBO bit-vectors back to variable assignments
//! and two classical QUBO solvers (exhaustive search and simulated annealing).
//!
//! Four translations are provided:
//!
//! | method                       | logical qubits |
//! |------------------------------|----------------|
//! | [`Method::Choi`]             | `3m`           |
//! | [`Method::Chancellor`]       | `n + m`        |
//! | [`Method::Nuesslein2nm`]     | `2n + m`       |
//! | [`Method::NuessleinNm`]      | `<= n + m`     |
//!
//! The crate is `no_std` and only needs an allocator. File formats, the
//! experiment runners and the command-line front-end live in the `qubosat`
//! crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod formula;
pub mod qubo;
pub mod solve;
pub mod translate;

pub use formula::{Assignment, Clause, Formula, FormulaError, Literal};
pub use qubo::{BitVector, QuboError, QuboMatrix};
pub use solve::{SaParams, SolveError, SolveResult};
pub use translate::{
    ChancellorParams, ChoiParams, Method, MethodKind, QubitRole, Translation, TranslateError,
};
