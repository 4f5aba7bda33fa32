//! Global-spin readout and chain-length detection.
//!
//! The only measurement available is the total spin `S_Z = Σ_i Z_i`. The
//! protocol here recovers both mirror copies of an `n`-qubit register from
//! a handful of such measurements, conjugated by CNOT and Toffoli gates
//! onto the readout site.

mod constraints;
mod length;
mod protocol;
mod transcript;

pub use constraints::{build_constraints, solve_constraints, ConstraintSystem, Equation};
pub use length::{detect_chain_length, ChainProbe, LengthDetection, SampledChain, SimulatedChain};
pub use protocol::{
    mirror_pair_state, register_state, run_protocol, run_protocol_with, IdealGates, ReadoutGates,
    READOUT_SITE_TOL,
};
pub use transcript::{PairOutcome, ReadoutTranscript, RegisterPair};
