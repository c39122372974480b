//! Single-configuration commands: `run` and `ssqi`.

use std::f64::consts::PI;
use std::path::Path;

use qss_core::protocol::{compare_ssqi, run, ProtocolConfig, SsqiComparison};
use qss_core::qstate::StateVector;
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub fn load_config(path: &Path) -> CliResult<ProtocolConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    ProtocolConfig::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// The error report of a configuration as pretty JSON.
pub fn run_report(cfg: &ProtocolConfig) -> CliResult<String> {
    let report = run(cfg)?;
    serde_json::to_string_pretty(&report).map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SsqiReport {
    pub theta: f64,
    pub phi: f64,
    #[serde(flatten)]
    pub comparison: SsqiComparison,
}

/// Teleports `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` with and without the
/// configured code.
pub fn ssqi_report(cfg: &ProtocolConfig, theta: f64, phi: f64) -> CliResult<SsqiReport> {
    if !(0.0..=PI).contains(&theta) {
        return Err(CliError::Input(format!("theta must lie in [0, π], got {theta}")));
    }
    if !(0.0..2.0 * PI).contains(&phi) {
        return Err(CliError::Input(format!("phi must lie in [0, 2π), got {phi}")));
    }
    let comparison = compare_ssqi(cfg, &StateVector::from_bloch(theta, phi))?;
    Ok(SsqiReport { theta, phi, comparison })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qss_core::noise::NoiseSpec;
    use qss_core::protocol::{QecConfig, QecMode, QecScheme};

    #[test]
    fn angle_bounds() {
        let cfg = ProtocolConfig::uniform(3, NoiseSpec::noiseless(), QecConfig::NONE).unwrap();
        assert!(ssqi_report(&cfg, -0.1, 0.0).is_err());
        assert!(ssqi_report(&cfg, 0.5, 2.0 * PI).is_err());
        let r = ssqi_report(&cfg, PI, 0.0).unwrap();
        assert!((r.comparison.fidelity_with_qec - 1.0).abs() < 1e-12);
    }

    #[test]
    fn repetition_improves_teleportation_under_damping() {
        let qec = QecConfig::new(QecScheme::Repetition, QecMode::SingleCycle);
        let cfg = ProtocolConfig::uniform(3, NoiseSpec::damping(0.2).unwrap(), qec).unwrap();
        let r = ssqi_report(&cfg, 1.0, 0.5).unwrap();
        assert!(r.comparison.fidelity_with_qec > r.comparison.fidelity_without_qec);
        assert!(r.comparison.qec_effective);
    }
}
