//! Continuous-time quantum walks on dynamic graphs.
//!
//! A dynamic graph is an ordered sequence of static graphs, each evolved for
//! a fixed duration under `e^{-iAt}` with `A` the adjacency matrix. This
//! crate compiles quantum gates and circuits to such schedules, simulates
//! them with per-component closed forms (falling back to spectral
//! decomposition), and verifies the compiled schedules against textbook
//! unitaries.
//!
//! Vertex `i` corresponds to basis state `|i>`; for `n` qubits the bit string
//! reads most-significant-bit first, so qubit 1 is the leftmost bit and
//! `|011> = |3>`. Gate durations are kept as exact rational multiples of pi
//! until a walk is actually evolved.

pub mod error;
pub mod gates;
pub mod graph;
pub mod linalg;
pub mod schedule;
pub mod text;
pub mod time;
pub mod walk;

pub use error::{CompileError, EngineError, GraphError, ParseError};
pub use gates::{
    compile_circuit, compile_gate, compile_gate_legacy, compile_identity, equal_up_to_global_phase,
    gate_unitary, Circuit, GateOp, IdentityKind,
};
pub use graph::{ComponentKind, Graph};
pub use linalg::{Matrix, C64};
pub use schedule::{Checkpoint, Schedule, Segment};
pub use text::{
    parse_circuit, parse_schedule, serialize_circuit, serialize_schedule, trace_to_csv, StateSpec,
};
pub use time::Time;
pub use walk::{
    evolve_closed_form, evolve_generic, evolve_schedule, evolve_segment, trace_schedule,
    StateVector, WalkTrace,
};
