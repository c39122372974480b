//! The n-party secret-sharing protocol for classical bits, evaluated by
//! exact enumeration of every choice tuple or by seeded Monte Carlo.

mod config;
mod engine;
mod run;
mod ssqi;
mod types;

pub use config::{
    Evaluation, NoiseKind, ProtocolConfig, QecConfig, QecMode, QecScheme, DEFAULT_TRIALS, MAX_EXACT_PARTIES,
    MAX_PARTIES,
};
pub use run::{montecarlo_wrong_count, run, run_exact, run_montecarlo, run_tuple, ErrorReport, TupleError, MC_BLOCK};
pub use ssqi::{compare_ssqi, correction_convention, run_ssqi, teleport_fidelity, SsqiComparison};
pub use types::{ChoiceTuple, PartyOp, Preparation, SecretBit};
