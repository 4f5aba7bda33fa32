//! Dense Schrödinger-picture simulator used as ground truth for the
//! symplectic engine and the compiler.

mod measure;
mod state;
mod unitary;

pub use measure::{
    measure_sz, sz_distribution, DiagonalMixture, MeasurementModel, MeasurementRecord, Observable,
};
pub use state::{init_zero, StateVector, MAX_QUBITS};
pub use unitary::{
    global_phase_fidelity, phase_equivalent, schedule_unitary, DenseUnitary,
    MAX_DENSE_UNITARY_QUBITS,
};
