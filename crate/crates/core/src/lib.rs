//! Exact density-matrix simulation of the multiparty quantum secret sharing
//! protocol for classical messages (QSSCM) and its quantum-information
//! extension (SSQI) under bit-flip, phase-flip and amplitude-damping noise.
//!
//! The crate is layered bottom-up:
//!
//! - [`qstate`]: dense states, operators, Kraus channels and the usual
//!   register algebra (tensor, targeted unitaries, partial trace).
//! - [`noise`]: the three single-qubit noise channels and their i.i.d. lift.
//! - [`qec`]: repetition majority vote, the five-qubit perfect code and the
//!   four-qubit approximate amplitude-damping code.
//! - [`protocol`]: the protocol itself, evaluated by exact enumeration of the
//!   random choices or by seeded Monte Carlo, plus the teleportation layer.
//! - [`closed_form`]: the analytic error expressions, written independently
//!   of the simulator so each side checks the other.
//!
//! Qubit 0 is always the most significant bit of a basis index.

pub mod closed_form;
pub mod error;
pub mod noise;
pub mod protocol;
pub mod qec;
pub mod qstate;
pub mod tolerance;

pub use error::{QssError, Result};
