//! Run configuration and its JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{QssError, Result};
use crate::noise::{HopAssignment, NoiseSpec};

/// Largest party count for exhaustive enumeration (`8 · 3⁶` tuples).
pub const MAX_EXACT_PARTIES: usize = 8;
/// Largest party count accepted at all.
pub const MAX_PARTIES: usize = 32;
pub const DEFAULT_TRIALS: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QecScheme {
    None,
    Repetition,
    FiveQubit,
    FourQubit,
}

impl QecScheme {
    pub fn label(self) -> &'static str {
        match self {
            QecScheme::None => "none",
            QecScheme::Repetition => "repetition",
            QecScheme::FiveQubit => "five_qubit",
            QecScheme::FourQubit => "four_qubit",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QecMode {
    /// Encode once at the preparer, decode once at the end.
    #[default]
    SingleCycle,
    /// Encode, transmit, recover and decode on every hop.
    PerHop,
}

impl QecMode {
    pub fn label(self) -> &'static str {
        match self {
            QecMode::SingleCycle => "single_cycle",
            QecMode::PerHop => "per_hop",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QecConfig {
    pub scheme: QecScheme,
    #[serde(default)]
    pub mode: QecMode,
}

impl QecConfig {
    pub const NONE: QecConfig = QecConfig {
        scheme: QecScheme::None,
        mode: QecMode::SingleCycle,
    };

    pub fn new(scheme: QecScheme, mode: QecMode) -> Self {
        Self { scheme, mode }
    }
}

impl Default for QecConfig {
    fn default() -> Self {
        Self::NONE
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    Pauli,
    Damping,
}

impl NoiseKind {
    pub fn label(self) -> &'static str {
        match self {
            NoiseKind::Pauli => "pauli",
            NoiseKind::Damping => "damping",
        }
    }

    pub fn of(spec: &NoiseSpec) -> Self {
        match spec {
            NoiseSpec::Pauli { .. } => NoiseKind::Pauli,
            NoiseSpec::AmplitudeDamping { .. } => NoiseKind::Damping,
        }
    }
}

/// A complete protocol run description.
///
/// `hops` lists one noise channel per hop in traversal order: preparer to
/// first receiver, each receiver to the next, last receiver to the sender,
/// and sender back to the first receiver.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolConfig {
    pub parties: usize,
    pub hops: HopAssignment,
    pub qec: QecConfig,
    pub evaluation: Evaluation,
}

impl ProtocolConfig {
    pub fn new(parties: usize, hops: HopAssignment, qec: QecConfig, evaluation: Evaluation) -> Result<Self> {
        let cfg = Self {
            parties,
            hops,
            qec,
            evaluation,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Exact evaluation with the same noise on every hop.
    pub fn uniform(parties: usize, noise: NoiseSpec, qec: QecConfig) -> Result<Self> {
        Self::new(parties, HopAssignment::uniform(noise, parties), qec, Evaluation::Exact)
    }

    pub fn with_evaluation(mut self, evaluation: Evaluation) -> Result<Self> {
        self.evaluation = evaluation;
        self.validate()?;
        Ok(self)
    }

    pub fn with_qec(mut self, qec: QecConfig) -> Result<Self> {
        self.qec = qec;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.parties < 3 {
            return Err(QssError::InvalidConfig(format!(
                "parties: at least 3 are required, got {}",
                self.parties
            )));
        }
        if self.parties > MAX_PARTIES {
            return Err(QssError::TooManyParties {
                parties: self.parties,
                max: MAX_PARTIES,
            });
        }
        if self.hops.len() != self.parties {
            return Err(QssError::InvalidConfig(format!(
                "noise: {} parties need {} hops, got {}",
                self.parties,
                self.parties,
                self.hops.len()
            )));
        }
        if self.qec.scheme == QecScheme::Repetition && self.qec.mode == QecMode::PerHop {
            return Err(QssError::InvalidConfig(
                "qec: the repetition code needs the preparation basis and cannot run per hop".into(),
            ));
        }
        if let Evaluation::MonteCarlo { trials: 0, .. } = self.evaluation {
            return Err(QssError::InvalidConfig("evaluation.trials must be at least 1".into()));
        }
        Ok(())
    }

    /// `"pauli"`, `"damping"` or `"mixed"`.
    pub fn noise_label(&self) -> &'static str {
        let mut kinds = self.hops.hops().iter().map(NoiseKind::of);
        match kinds.next() {
            Some(first) if kinds.all(|k| k == first) => first.label(),
            Some(_) => "mixed",
            None => "none",
        }
    }

    /// Parses the JSON form, reporting the line and column of syntax and
    /// schema errors and the field path of semantic ones.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
            QssError::InvalidConfig(e.to_string())
        })?;
        raw.into_config()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let hop = |spec: &NoiseSpec| match *spec {
            NoiseSpec::Pauli { p_bit, p_phase } => serde_json::json!({"p_bit": p_bit, "p_phase": p_phase}),
            NoiseSpec::AmplitudeDamping { gamma } => serde_json::json!({ "gamma": gamma }),
        };
        let kind = self.hops.hops().first().map_or(NoiseKind::Pauli, NoiseKind::of);
        let evaluation = match self.evaluation {
            Evaluation::Exact => serde_json::json!({"mode": "exact"}),
            Evaluation::MonteCarlo { trials, seed } => {
                serde_json::json!({"mode": "monte_carlo", "trials": trials, "seed": seed})
            }
        };
        serde_json::json!({
            "parties": self.parties,
            "noise": {
                "kind": kind.label(),
                "per_hop": self.hops.hops().iter().map(hop).collect::<Vec<_>>(),
            },
            "qec": {"scheme": self.qec.scheme.label(), "mode": self.qec.mode.label()},
            "evaluation": evaluation,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    parties: usize,
    noise: RawNoise,
    #[serde(default)]
    qec: QecConfig,
    #[serde(default)]
    evaluation: RawEvaluation,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNoise {
    kind: NoiseKind,
    uniform: Option<RawHop>,
    per_hop: Option<Vec<RawHop>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHop {
    p: Option<f64>,
    p_bit: Option<f64>,
    p_phase: Option<f64>,
    gamma: Option<f64>,
}

#[derive(Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawEvalMode {
    Exact,
    MonteCarlo,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvaluation {
    mode: RawEvalMode,
    trials: Option<u64>,
    seed: Option<u64>,
}

impl Default for RawEvaluation {
    fn default() -> Self {
        Self {
            mode: RawEvalMode::Exact,
            trials: None,
            seed: None,
        }
    }
}

fn field_error(path: &str, msg: impl std::fmt::Display) -> QssError {
    QssError::InvalidConfig(format!("{path}: {msg}"))
}

impl RawHop {
    fn into_spec(self, kind: NoiseKind, path: &str) -> Result<NoiseSpec> {
        let spec = match kind {
            NoiseKind::Pauli => {
                if self.gamma.is_some() {
                    return Err(field_error(path, "`gamma` does not apply to pauli noise"));
                }
                match (self.p, self.p_bit, self.p_phase) {
                    (Some(p), None, None) => NoiseSpec::flip(p),
                    (None, None, None) => {
                        return Err(field_error(path, "pauli noise needs `p` or `p_bit`/`p_phase`"))
                    }
                    (None, bit, phase) => NoiseSpec::pauli(bit.unwrap_or(0.0), phase.unwrap_or(0.0)),
                    (Some(_), _, _) => {
                        return Err(field_error(path, "`p` cannot be combined with `p_bit`/`p_phase`"))
                    }
                }
            }
            NoiseKind::Damping => {
                if self.p.is_some() || self.p_bit.is_some() || self.p_phase.is_some() {
                    return Err(field_error(path, "flip probabilities do not apply to damping noise"));
                }
                match self.gamma {
                    Some(g) => NoiseSpec::damping(g),
                    None => return Err(field_error(path, "damping noise needs `gamma`")),
                }
            }
        };
        spec.map_err(|e| field_error(path, e))
    }
}

impl RawConfig {
    fn into_config(self) -> Result<ProtocolConfig> {
        let kind = self.noise.kind;
        let hops = match (self.noise.uniform, self.noise.per_hop) {
            (Some(hop), None) => HopAssignment::uniform(hop.into_spec(kind, "noise.uniform")?, self.parties),
            (None, Some(list)) => {
                let specs = list
                    .into_iter()
                    .enumerate()
                    .map(|(i, hop)| hop.into_spec(kind, &format!("noise.per_hop[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                HopAssignment::new(specs)
            }
            _ => return Err(field_error("noise", "exactly one of `uniform` and `per_hop` is required")),
        };
        let evaluation = match self.evaluation.mode {
            RawEvalMode::Exact => {
                if self.evaluation.trials.is_some() || self.evaluation.seed.is_some() {
                    return Err(field_error(
                        "evaluation",
                        "`trials` and `seed` only apply to monte_carlo",
                    ));
                }
                Evaluation::Exact
            }
            RawEvalMode::MonteCarlo => Evaluation::MonteCarlo {
                trials: self.evaluation.trials.unwrap_or(DEFAULT_TRIALS),
                seed: self
                    .evaluation
                    .seed
                    .ok_or_else(|| field_error("evaluation.seed", "required for monte_carlo"))?,
            },
        };
        ProtocolConfig::new(self.parties, hops, self.qec, evaluation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ProtocolConfig> {
        ProtocolConfig::from_json(text)
    }

    #[test]
    fn parses_uniform_damping() {
        let cfg = parse(r#"{"parties": 3, "noise": {"kind": "damping", "uniform": {"gamma": 0.1}}}"#).unwrap();
        assert_eq!(cfg.hops, HopAssignment::uniform(NoiseSpec::damping(0.1).unwrap(), 3));
        assert_eq!(cfg.qec, QecConfig::NONE);
        assert_eq!(cfg.evaluation, Evaluation::Exact);
        assert_eq!(cfg.noise_label(), "damping");
    }

    #[test]
    fn parses_full_config() {
        let cfg = parse(
            r#"{
                "parties": 4,
                "noise": {"kind": "pauli", "per_hop": [{"p": 0.1}, {"p_bit": 0.2}, {"p_phase": 0.3}, {"p_bit": 0.1, "p_phase": 0.0}]},
                "qec": {"scheme": "five_qubit", "mode": "per_hop"},
                "evaluation": {"mode": "monte_carlo", "trials": 500, "seed": 9}
            }"#,
        )
        .unwrap();
        assert_eq!(cfg.hops.hops()[0], NoiseSpec::flip(0.1).unwrap());
        assert_eq!(cfg.hops.hops()[1], NoiseSpec::pauli(0.2, 0.0).unwrap());
        assert_eq!(cfg.hops.hops()[2], NoiseSpec::pauli(0.0, 0.3).unwrap());
        assert_eq!(cfg.qec, QecConfig::new(QecScheme::FiveQubit, QecMode::PerHop));
        assert_eq!(cfg.evaluation, Evaluation::MonteCarlo { trials: 500, seed: 9 });
        let again = parse(&cfg.to_json().to_string()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn unknown_fields_are_rejected_with_position() {
        let err = parse("{\"parties\": 3,\n \"noise\": {\"kind\": \"pauli\", \"uniform\": {\"p\": 0.1}},\n \"extra\": 1}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3"), "{err}");
        assert!(err.contains("extra"), "{err}");
        let err = parse(r#"{"parties": 3, "noise": {"kind": "pauli", "uniform": {"q": 0.1}}}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"));
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let cases = [
            (r#"{"parties": 3, "noise": {"kind": "damping", "per_hop": [{"gamma": 0.1}, {"gamma": 2}, {"gamma": 0}]}}"#, "noise.per_hop[1]"),
            (r#"{"parties": 3, "noise": {"kind": "damping", "uniform": {"p": 0.1}}}"#, "noise.uniform"),
            (r#"{"parties": 3, "noise": {"kind": "pauli"}}"#, "noise"),
            (r#"{"parties": 3, "noise": {"kind": "pauli", "uniform": {"p": 0.1}}, "evaluation": {"mode": "monte_carlo"}}"#, "evaluation.seed"),
            (r#"{"parties": 3, "noise": {"kind": "pauli", "per_hop": [{"p": 0.1}]}}"#, "noise"),
            (r#"{"parties": 2, "noise": {"kind": "pauli", "uniform": {"p": 0.1}}}"#, "parties"),
        ];
        for (text, needle) in cases {
            let err = parse(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn repetition_per_hop_is_rejected() {
        let err = parse(
            r#"{"parties": 3, "noise": {"kind": "pauli", "uniform": {"p": 0.1}}, "qec": {"scheme": "repetition", "mode": "per_hop"}}"#,
        );
        assert!(err.is_err());
    }

    #[test]
    fn zero_trials_rejected() {
        let err = parse(
            r#"{"parties": 3, "noise": {"kind": "pauli", "uniform": {"p": 0.1}}, "evaluation": {"mode": "monte_carlo", "trials": 0, "seed": 1}}"#,
        );
        assert!(err.is_err());
    }
}
