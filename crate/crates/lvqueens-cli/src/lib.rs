//! Campaign harness and file emission behind the `lvqueens` binary.
//!
//! The library half exists so the harness, seed derivation, and file formats
//! are testable without going through the executable; `main.rs` is a thin
//! argument-parsing shell over [`harness::run_campaign`] and friends.

pub mod emit;
pub mod harness;
pub mod seeding;
