//! File formats, experiments and the command-line front-end for
//! [`qubosat_core`].
//!
//! - [`dimacs`]: DIMACS CNF reading and writing.
//! - [`json`]: QUBO, translation, solver-result and annealing-config documents.
//! - [`experiment`]: coupling-count scaling and solution-quality comparison, as CSV.
//! - [`verify`]: brute-force oracle checks of the translations.
//! - [`cli`]: the `qubosat` command.

pub mod cli;
pub mod dimacs;
pub mod experiment;
pub mod json;
pub mod verify;

pub use qubosat_core;
