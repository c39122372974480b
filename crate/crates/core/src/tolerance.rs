//! Numerical tolerances shared by the library, its tests and the CLI.

/// Algebraic identities: normalization, unitarity, trace preservation,
/// Hermiticity, code round trips.
pub const ALGEBRAIC: f64 = 1e-12;

/// Analytic closed form against exact simulation.
pub const ANALYTIC_VS_SIM: f64 = 1e-9;

/// Smallest admissible eigenvalue of a density matrix.
pub const MIN_EIGENVALUE: f64 = -1e-10;
