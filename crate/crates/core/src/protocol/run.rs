use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{Evaluation, ProtocolConfig, QecScheme, MAX_EXACT_PARTIES};
use super::engine::{ExactEngine, McEngine};
use super::types::{ChoiceTuple, PartyOp};
use crate::closed_form::e_majority;
use crate::error::{QssError, Result};

/// Trials per independently seeded Monte Carlo block. Block `b` draws from
/// ChaCha8 seeded with the run seed on stream `b`, so the result does not
/// depend on how blocks are spread over threads.
pub const MC_BLOCK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TupleError {
    pub tuple: String,
    pub error: f64,
    /// Single-copy error before the majority vote (repetition only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_single_copy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub parties: usize,
    pub noise_model: String,
    pub qec_scheme: String,
    pub qec_mode: String,
    pub error_exact: Option<f64>,
    /// Majority vote applied to the tuple-averaged single-copy error
    /// (repetition only); differs from `error_exact` when tuples differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_majority_of_average: Option<f64>,
    pub error_mc: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_tuple: Option<Vec<TupleError>>,
}

impl ErrorReport {
    fn empty(cfg: &ProtocolConfig) -> Self {
        let mode = match cfg.qec.scheme {
            QecScheme::None | QecScheme::Repetition => "single_cycle",
            _ => cfg.qec.mode.label(),
        };
        Self {
            parties: cfg.parties,
            noise_model: cfg.noise_label().to_string(),
            qec_scheme: cfg.qec.scheme.label().to_string(),
            qec_mode: mode.to_string(),
            error_exact: None,
            error_majority_of_average: None,
            error_mc: None,
            mc_stderr: None,
            trials: None,
            seed: None,
            per_tuple: None,
        }
    }
}

fn check_tuple(cfg: &ProtocolConfig, t: &ChoiceTuple) -> Result<()> {
    if t.intermediate_ops.len() + 2 != cfg.parties {
        return Err(QssError::InvalidConfig(format!(
            "tuple has {} intermediate operations, {} parties need {}",
            t.intermediate_ops.len(),
            cfg.parties,
            cfg.parties - 2
        )));
    }
    Ok(())
}

fn combine(cfg: &ProtocolConfig, single: f64) -> f64 {
    if cfg.qec.scheme == QecScheme::Repetition {
        e_majority(single).expect("probability")
    } else {
        single
    }
}

/// Exact wrong-bit probability of one tuple; for the repetition code the
/// majority of three independent copies.
pub fn run_tuple(cfg: &ProtocolConfig, t: &ChoiceTuple) -> Result<f64> {
    cfg.validate()?;
    check_tuple(cfg, t)?;
    let engine = ExactEngine::new(cfg)?;
    Ok(combine(cfg, engine.tuple_error(t.prep, &t.intermediate_ops, t.secret)))
}

/// Uniform average over every tuple, with the per-tuple values.
pub fn run_exact(cfg: &ProtocolConfig) -> Result<ErrorReport> {
    cfg.validate()?;
    if cfg.parties > MAX_EXACT_PARTIES {
        return Err(QssError::TooManyParties {
            parties: cfg.parties,
            max: MAX_EXACT_PARTIES,
        });
    }
    let engine = ExactEngine::new(cfg)?;
    let tuples: Vec<ChoiceTuple> = ChoiceTuple::enumerate(cfg.parties).collect();
    let singles: Vec<f64> = tuples
        .par_iter()
        .map(|t| engine.tuple_error(t.prep, &t.intermediate_ops, t.secret))
        .collect();
    let repetition = cfg.qec.scheme == QecScheme::Repetition;
    let per_tuple: Vec<TupleError> = tuples
        .iter()
        .zip(&singles)
        .map(|(t, &single)| TupleError {
            tuple: t.to_string(),
            error: combine(cfg, single),
            error_single_copy: repetition.then_some(single),
        })
        .collect();
    let count = per_tuple.len() as f64;
    let mut report = ErrorReport::empty(cfg);
    report.error_exact = Some(per_tuple.iter().map(|e| e.error).sum::<f64>() / count);
    if repetition {
        report.error_majority_of_average = Some(e_majority(singles.iter().sum::<f64>() / count)?);
    }
    report.per_tuple = Some(per_tuple);
    Ok(report)
}

/// Number of wrong decided bits over `trials` sampled runs.
pub fn montecarlo_wrong_count(cfg: &ProtocolConfig, trials: u64, seed: u64) -> Result<u64> {
    cfg.validate()?;
    let engine = McEngine::new(cfg)?;
    let blocks = trials.div_ceil(MC_BLOCK);
    Ok((0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let n = MC_BLOCK.min(trials - b * MC_BLOCK);
            let mut ops: Vec<PartyOp> = Vec::with_capacity(cfg.parties);
            (0..n)
                .filter(|_| engine.trial(&mut rng, cfg.parties, &mut ops))
                .count() as u64
        })
        .sum())
}

/// Sampled estimate `ê` with standard error `√(ê(1−ê)/trials)`.
pub fn run_montecarlo(cfg: &ProtocolConfig) -> Result<ErrorReport> {
    let Evaluation::MonteCarlo { trials, seed } = cfg.evaluation else {
        return Err(QssError::InvalidConfig(
            "evaluation: monte_carlo mode with a seed is required".into(),
        ));
    };
    let wrong = montecarlo_wrong_count(cfg, trials, seed)?;
    let e = wrong as f64 / trials as f64;
    let mut report = ErrorReport::empty(cfg);
    report.error_mc = Some(e);
    report.mc_stderr = Some((e * (1.0 - e) / trials as f64).sqrt());
    report.trials = Some(trials);
    report.seed = Some(seed);
    Ok(report)
}

/// Evaluates the configuration in its configured mode.
pub fn run(cfg: &ProtocolConfig) -> Result<ErrorReport> {
    match cfg.evaluation {
        Evaluation::Exact => run_exact(cfg),
        Evaluation::MonteCarlo { .. } => run_montecarlo(cfg),
    }
}
