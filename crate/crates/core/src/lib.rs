//! Statevector simulation and steered amplitude amplification.
//!
//! The crate is organized bottom-up:
//!
//! * [`qstate`]: dense statevectors in little-endian (OpenQASM) basis order,
//!   measurement distributions and seeded sampling.
//! * [`gates`]: the single-qubit gate set, tensor layers and multi-controlled Z.
//! * [`steering`]: structured unitaries used to prepare trial states and
//!   steer oracles (tensor layers, dense matrices, state-preparation maps).
//! * [`oracles`]: every reflection used by the search: phase oracles over
//!   basis subsets, steered oracles, diffusers, kernel oracles and
//!   subsystem oracles.
//! * [`amplify`]: plane geometry, region classification, iteration
//!   scheduling and the Grover engine.
//! * [`patternmatch`]: quantum database search over index and data registers.
//! * [`circuit`]: a flat gate-level IR, OpenQASM 3 emission and re-parsing.
//! * [`cli`]: report-producing commands behind the `steergrover` binary.

pub mod amplify;
pub mod circuit;
pub mod cli;
pub mod dense;
pub mod error;
pub mod gates;
pub mod oracles;
pub mod patternmatch;
pub mod qstate;
pub mod random;
pub mod steering;
pub mod tolerance;

pub use num_complex::Complex64 as C64;

pub use amplify::{
    classify_region, decompose, grover_iterate, grover_run, optimal_iterations,
    success_probability, GroverPlan, GroverRun, PlaneGeometry, Region, TraceEntry,
};
pub use error::{Error, ErrorClass, Result};
pub use gates::{Gate, GateKind, SingleQubit, TensorOp};
pub use oracles::{KernelSet, Orientation, Reflection, Subset, TargetSet};
pub use qstate::{Histogram, MeasurementDistribution, StateVector};
pub use steering::LinearOp;
