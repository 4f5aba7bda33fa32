//! Lowering of logical circuits to translation-invariant pulse schedules.

mod circuit;
mod gates;
mod layout;
mod schedule;

pub use circuit::{LogicalCircuit, LogicalGate};
pub use gates::{
    compile_circuit, compile_controlled_flip, compile_gate, compile_k, compile_rx, compile_rz,
    compile_xstring, compile_xstring_with, controlled_flip_parts, describe, from_operator_product,
    gate_rotations, k_rotations, mirror_word, normalize_angle, predict_selection, rx_rotations,
    rz_rotations, xstring_generator, xstring_timing, Factor, Rotation, XStringTiming,
};
pub use layout::{resource_plan, LayoutMap, ResourceReport};
pub use schedule::{PulseSchedule, ScheduleItem};
