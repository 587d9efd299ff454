//! Statevector simulation of zero-crossing counting circuits and
//! sequency-ordered Walsh-Hadamard transforms.
//!
//! A hidden bit string `s` of width `n` defines the +/-1 sequence whose
//! entry `k` is `(-1)^(s . k)`. This crate counts that sequence's sign
//! changes four independent ways and cross-validates them:
//!
//! - brute force over the generated sequence ([`classical`]),
//! - a doubling recurrence and a closed form on the bits of `s`
//!   ([`classical`]),
//! - a quantum circuit that recovers the count with a single oracle
//!   query, simulated exactly ([`circuit`] + [`simulator`]).
//!
//! The same post-processing block that turns the recovered secret into
//! the count also turns a plain Hadamard layer into the Walsh-Hadamard
//! transform in sequency order; the [`transforms`] module provides the
//! classical reference engine (dense matrices and fast transforms) the
//! circuit is checked against.
//!
//! ```
//! use seqsim_core::{
//!     circuit::{build_oracle, build_zero_crossings_circuit},
//!     simulator::{apply, initial_state, measure_register},
//!     BitString,
//! };
//!
//! let secret: BitString = "101".parse().unwrap();
//! let oracle = build_oracle(&secret);
//! let circuit = build_zero_crossings_circuit(&oracle, 3, true).unwrap();
//! let state = apply(&initial_state(4, 0).unwrap(), &circuit).unwrap();
//! let outcome = measure_register(&state, &[0, 1, 2]).unwrap();
//! assert_eq!(outcome.basis_index, 6);
//! assert_eq!(oracle.query_count(), 1);
//! ```

pub mod bits;
pub mod circuit;
pub mod classical;
pub mod error;
pub mod simulator;
pub mod transforms;

pub use bits::BitString;
pub use circuit::{Circuit, Gate, GateCensus, GateKind, OracleHandle};
pub use classical::SignSequence;
pub use error::{Error, Result};
pub use simulator::{ComplexMatrix, MeasurementOutcome, StateVector};
pub use transforms::{RealMatrix, RealVector};
