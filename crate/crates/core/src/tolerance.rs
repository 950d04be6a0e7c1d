//! Numerical tolerances and capacity limits shared by the whole crate.

/// Norm and probability-sum tolerance.
pub const NORM_TOL: f64 = 1e-10;

/// Tolerance for algebraic identities on small registers.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Max-entry deviation of `U†U` from the identity accepted when a
/// user-supplied matrix is declared unitary.
pub const UNITARITY_TOL: f64 = 1e-8;

/// Below this norm a marked or unmarked component is treated as absent.
pub const ZERO_COMPONENT_TOL: f64 = 1e-12;

/// Database columns and queries further than this from unit norm are rejected.
pub const INGEST_NORM_TOL: f64 = 1e-6;

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

/// Largest register for which a dense `2^n x 2^n` matrix is built.
pub const DENSE_MAX_QUBITS: usize = 10;

/// Largest register accepted by the kernel oracle.
pub const KERNEL_MAX_QUBITS: usize = 10;
