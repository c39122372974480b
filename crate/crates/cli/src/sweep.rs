//! One-parameter sweeps over a base configuration.

use std::io::Write;
use std::str::FromStr;

use qss_core::noise::{HopAssignment, NoiseSpec};
use qss_core::protocol::{
    run_exact, run_montecarlo, Evaluation, NoiseKind, ProtocolConfig, QecMode, QecScheme, MAX_EXACT_PARTIES,
    MAX_PARTIES,
};

use crate::analytic::analytic_error;
use crate::error::{CliError, CliResult};
use crate::format::{fixed12, opt, opt_int};

pub const CSV_HEADER: [&str; 12] = [
    "sweep_param",
    "value",
    "n_parties",
    "noise_model",
    "qec_scheme",
    "qec_mode",
    "error_analytic",
    "error_exact",
    "error_mc",
    "mc_stderr",
    "trials",
    "seed",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    P,
    Gamma,
    GammaA,
    GammaB,
    GammaC,
    N,
}

impl SweepParam {
    pub fn label(self) -> &'static str {
        match self {
            SweepParam::P => "p",
            SweepParam::Gamma => "gamma",
            SweepParam::GammaA => "gamma_A",
            SweepParam::GammaB => "gamma_B",
            SweepParam::GammaC => "gamma_C",
            SweepParam::N => "n",
        }
    }

    /// Hop index of a single named three-party channel (traversal order
    /// preparer→receiver, receiver→sender, sender→receiver).
    fn three_party_hop(self) -> Option<usize> {
        match self {
            SweepParam::GammaB => Some(0),
            SweepParam::GammaC => Some(1),
            SweepParam::GammaA => Some(2),
            _ => None,
        }
    }
}

impl FromStr for SweepParam {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "p" => SweepParam::P,
            "gamma" => SweepParam::Gamma,
            "gamma_A" => SweepParam::GammaA,
            "gamma_B" => SweepParam::GammaB,
            "gamma_C" => SweepParam::GammaC,
            "n" => SweepParam::N,
            other => return Err(format!("unknown sweep parameter `{other}` (p, gamma, gamma_A, gamma_B, gamma_C, n)")),
        })
    }
}

/// Which evaluations to run at each point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluations {
    pub exact: bool,
    /// `(trials, seed)` when Monte Carlo is requested.
    pub monte_carlo: Option<(u64, u64)>,
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub vary: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub base: ProtocolConfig,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl SweepSpec {
    pub fn new(vary: SweepParam, from: f64, to: f64, steps: Option<usize>, base: ProtocolConfig) -> CliResult<Self> {
        if !(from.is_finite() && to.is_finite()) || from > to {
            return Err(input(format!("sweep range must satisfy from <= to, got {from}..{to}")));
        }
        let kind = base.hops.hops().first().map(NoiseKind::of);
        let steps = match vary {
            SweepParam::N => {
                if from.fract() != 0.0 || to.fract() != 0.0 || from < 3.0 || to > MAX_PARTIES as f64 {
                    return Err(input(format!("n must range over integers in 3..={MAX_PARTIES}")));
                }
                let count = (to - from) as usize + 1;
                match steps {
                    Some(s) if s != count => {
                        return Err(input(format!("n from {from} to {to} has {count} points, not {s}")))
                    }
                    _ => count,
                }
            }
            _ => {
                if from < 0.0 || to > 1.0 {
                    return Err(input(format!("{} must lie in [0, 1]", vary.label())));
                }
                let steps = steps.unwrap_or(11);
                if steps < 2 {
                    return Err(input("steps must be at least 2"));
                }
                steps
            }
        };
        match vary {
            SweepParam::P if kind != Some(NoiseKind::Pauli) => {
                return Err(input("sweeping p needs pauli noise in the base config"))
            }
            SweepParam::Gamma | SweepParam::GammaA | SweepParam::GammaB | SweepParam::GammaC
                if kind != Some(NoiseKind::Damping) =>
            {
                return Err(input(format!("sweeping {} needs damping noise", vary.label())))
            }
            SweepParam::GammaA | SweepParam::GammaB | SweepParam::GammaC if base.parties != 3 => {
                return Err(input(format!("{} is defined for three parties only", vary.label())))
            }
            _ => {}
        }
        Ok(Self {
            vary,
            from,
            to,
            steps,
            base,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let span = self.to - self.from;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.to
                } else {
                    self.from + span * i as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }

    /// The base configuration with the swept parameter set to `value`.
    pub fn config_at(&self, value: f64) -> CliResult<ProtocolConfig> {
        let base = &self.base;
        let hops = base.hops.hops();
        let (parties, hops) = match self.vary {
            SweepParam::P => (base.parties, HopAssignment::uniform(NoiseSpec::flip(value)?, base.parties)),
            SweepParam::Gamma => (base.parties, HopAssignment::uniform(NoiseSpec::damping(value)?, base.parties)),
            SweepParam::GammaA | SweepParam::GammaB | SweepParam::GammaC => {
                let mut list = hops.to_vec();
                list[self.vary.three_party_hop().expect("named hop")] = NoiseSpec::damping(value)?;
                (3, HopAssignment::new(list))
            }
            SweepParam::N => {
                let n = value as usize;
                (n, HopAssignment::uniform(hops[0], n))
            }
        };
        Ok(ProtocolConfig::new(parties, hops, base.qec, base.evaluation)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub sweep_param: String,
    pub value: f64,
    pub n_parties: usize,
    pub noise_model: String,
    pub qec_scheme: String,
    pub qec_mode: String,
    pub error_analytic: Option<f64>,
    pub error_exact: Option<f64>,
    pub error_mc: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

impl Row {
    pub fn fields(&self) -> [String; 12] {
        [
            self.sweep_param.clone(),
            fixed12(self.value),
            self.n_parties.to_string(),
            self.noise_model.clone(),
            self.qec_scheme.clone(),
            self.qec_mode.clone(),
            opt(self.error_analytic),
            opt(self.error_exact),
            opt(self.error_mc),
            opt(self.mc_stderr),
            opt_int(self.trials),
            opt_int(self.seed),
        ]
    }

    pub fn probabilities_valid(&self) -> bool {
        [self.error_analytic, self.error_exact, self.error_mc]
            .into_iter()
            .flatten()
            .all(|e| (0.0..=1.0).contains(&e))
    }
}

fn mode_label(cfg: &ProtocolConfig) -> &'static str {
    match cfg.qec.scheme {
        QecScheme::None | QecScheme::Repetition => QecMode::SingleCycle.label(),
        _ => cfg.qec.mode.label(),
    }
}

/// Evaluates one configuration.
pub fn evaluate(param: &str, value: f64, cfg: &ProtocolConfig, evals: Evaluations, analytic: bool) -> CliResult<Row> {
    let error_exact = if evals.exact && cfg.parties <= MAX_EXACT_PARTIES {
        run_exact(cfg)?.error_exact
    } else {
        None
    };
    let (error_mc, mc_stderr, trials, seed) = match evals.monte_carlo {
        Some((trials, seed)) => {
            let mc_cfg = cfg.clone().with_evaluation(Evaluation::MonteCarlo { trials, seed })?;
            let r = run_montecarlo(&mc_cfg)?;
            (r.error_mc, r.mc_stderr, Some(trials), Some(seed))
        }
        None => (None, None, None, None),
    };
    Ok(Row {
        sweep_param: param.to_string(),
        value,
        n_parties: cfg.parties,
        noise_model: cfg.noise_label().to_string(),
        qec_scheme: cfg.qec.scheme.label().to_string(),
        qec_mode: mode_label(cfg).to_string(),
        error_analytic: if analytic { analytic_error(cfg) } else { None },
        error_exact,
        error_mc,
        mc_stderr,
        trials,
        seed,
    })
}

pub fn run_sweep(spec: &SweepSpec, evals: Evaluations) -> CliResult<Vec<Row>> {
    spec.values()
        .into_iter()
        .map(|v| evaluate(spec.vary.label(), v, &spec.config_at(v)?, evals, true))
        .collect()
}

pub fn write_rows<W: Write>(out: W, rows: &[Row]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Fails with exit code 1 if any emitted probability is out of range.
pub fn check_rows(rows: &[Row]) -> CliResult<()> {
    match rows.iter().find(|r| !r.probabilities_valid()) {
        Some(r) => Err(CliError::Check(format!(
            "probability outside [0, 1] at {} = {}",
            r.sweep_param, r.value
        ))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qss_core::protocol::QecConfig;

    fn base_flip() -> ProtocolConfig {
        ProtocolConfig::uniform(3, NoiseSpec::flip(0.1).unwrap(), QecConfig::NONE).unwrap()
    }

    #[test]
    fn grid_and_configs() {
        let spec = SweepSpec::new(SweepParam::P, 0.0, 1.0, Some(11), base_flip()).unwrap();
        let values = spec.values();
        assert_eq!(values.len(), 11);
        assert_eq!(values[10], 1.0);
        assert!((values[3] - 0.3).abs() < 1e-15);
        let cfg = spec.config_at(0.3).unwrap();
        assert_eq!(cfg.hops.hops()[2], NoiseSpec::flip(0.3).unwrap());
    }

    #[test]
    fn invalid_specs() {
        assert!(SweepSpec::new(SweepParam::P, 0.5, 0.1, None, base_flip()).is_err());
        assert!(SweepSpec::new(SweepParam::Gamma, 0.0, 1.0, None, base_flip()).is_err());
        assert!(SweepSpec::new(SweepParam::P, 0.0, 1.0, Some(1), base_flip()).is_err());
        assert!(SweepSpec::new(SweepParam::N, 3.0, 6.0, Some(3), base_flip()).is_err());
        assert!(SweepSpec::new(SweepParam::N, 2.0, 6.0, None, base_flip()).is_err());
        let four = ProtocolConfig::uniform(4, NoiseSpec::damping(0.1).unwrap(), QecConfig::NONE).unwrap();
        assert!(SweepSpec::new(SweepParam::GammaB, 0.0, 1.0, None, four).is_err());
    }

    #[test]
    fn named_hops() {
        let base = ProtocolConfig::uniform(3, NoiseSpec::damping(0.0).unwrap(), QecConfig::NONE).unwrap();
        let spec = SweepSpec::new(SweepParam::GammaA, 0.0, 1.0, None, base).unwrap();
        let cfg = spec.config_at(0.4).unwrap();
        assert_eq!(cfg.hops.hops()[2], NoiseSpec::damping(0.4).unwrap());
        assert_eq!(cfg.hops.hops()[0], NoiseSpec::damping(0.0).unwrap());
    }

    #[test]
    fn party_sweep() {
        let spec = SweepSpec::new(SweepParam::N, 3.0, 6.0, None, base_flip()).unwrap();
        let rows = run_sweep(&spec, Evaluations { exact: true, monte_carlo: None }).unwrap();
        assert_eq!(rows.iter().map(|r| r.n_parties).collect::<Vec<_>>(), [3, 4, 5, 6]);
        for r in rows {
            assert!((r.error_exact.unwrap() - r.error_analytic.unwrap()).abs() < 1e-9);
        }
    }
}
