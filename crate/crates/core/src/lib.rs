//! Exact q-series machinery for overpartitions with bounded difference
//! between largest and smallest parts.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * [`series`]: truncated Laurent series over exact rationals,
//! * [`qfunctions`]: q-Pochhammer symbols, Gaussian and over q-binomial
//!   coefficients, and a truncated basic hypergeometric evaluator,
//! * [`enumeration`]: brute-force partition and overpartition oracles,
//! * [`identities`]: the generating functions and the checks that tie them
//!   to the oracles.
#![no_std]

extern crate alloc;

pub mod enumeration;
mod error;
pub mod identities;
pub mod qfunctions;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use report::{CheckName, IdentityCheck, Mismatch, Status, VerificationReport};
pub use series::{Agreement, QMonomial, QSeries};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
