//! Command-line front end and verification runner for `overq-core`.
//!
//! `overq table` prints counting sequences from closed forms, brute-force
//! oracles, or both side by side; `overq coeff` prints a single exact
//! coefficient; `overq verify` runs the identity checks and reports them as
//! text or JSON.

pub mod cli;
pub mod output;
pub mod runner;
pub mod table;

pub use cli::{run, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
