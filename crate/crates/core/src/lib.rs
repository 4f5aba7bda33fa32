//! Pulse compilation and verification for a qubit chain driven by a
//! translation-invariant quantum cellular automaton.
//!
//! The chain evolves under the step `T` (Hadamard on every site, then
//! controlled-Z on every neighbouring pair), interleaved with uniform
//! single-qubit pulses `exp(i α/2 A)` applied to all sites at once. This
//! crate provides:
//!
//! - [`symplectic`]: exact Heisenberg-picture propagation of Pauli words,
//!   the pulse-to-site selection matrix, and bit-reversal checks.
//! - [`statevec`]: a dense state-vector simulator used as ground truth,
//!   including the total-spin measurement models.
//! - [`compiler`]: lowering of logical circuits to pulse schedules on the
//!   interlaced `N = 4n + 2` chain, with resource accounting and text formats.
//! - [`readout`]: the global-spin readout protocol, its GF(2) constraint
//!   solver, and chain-length detection.
//! - [`verify`]: self-contained verification suites shared by the CLI.
//!
//! Sites are numbered `1..=N` throughout. In a basis index, site 1 is the
//! most significant bit.

pub mod compiler;
pub mod error;
pub mod gf2;
pub mod readout;
pub mod statevec;
pub mod symplectic;
pub mod verify;

pub use error::{Error, Result};
