//! Closed-form prediction for a configuration, where one exists.

use qss_core::closed_form::{e1_damp_general, e1_flip_hops, e_majority};
use qss_core::noise::NoiseSpec;
use qss_core::protocol::{ProtocolConfig, QecScheme};

/// Single-copy error: `½(1 − Π(1−2p_h))` for equal bit/phase flips on
/// every hop, or the three-party damping average.
fn unencoded(cfg: &ProtocolConfig) -> Option<f64> {
    let hops = cfg.hops.hops();
    let flips: Option<Vec<f64>> = hops
        .iter()
        .map(|h| match *h {
            NoiseSpec::Pauli { p_bit, p_phase } if p_bit == p_phase => Some(p_bit),
            _ => None,
        })
        .collect();
    if let Some(ps) = flips {
        return e1_flip_hops(&ps).ok();
    }
    let gammas: Option<Vec<f64>> = hops
        .iter()
        .map(|h| match *h {
            NoiseSpec::AmplitudeDamping { gamma } => Some(gamma),
            _ => None,
        })
        .collect();
    match gammas.as_deref() {
        // traversal order is (B, C, A)
        Some(&[b, c, a]) => e1_damp_general(a, b, c).ok(),
        _ => None,
    }
}

/// Closed form for no QEC and for the repetition code (majority applied to
/// the tuple-averaged error); `None` for the quantum codes.
pub fn analytic_error(cfg: &ProtocolConfig) -> Option<f64> {
    match cfg.qec.scheme {
        QecScheme::None => unencoded(cfg),
        QecScheme::Repetition => unencoded(cfg).and_then(|e| e_majority(e).ok()),
        QecScheme::FiveQubit | QecScheme::FourQubit => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qss_core::closed_form::{e1_damp, e1_flip_nparty, ef_damp, ef_flip_nparty};
    use qss_core::protocol::{QecConfig, QecMode};

    #[test]
    fn dispatch() {
        let flip = ProtocolConfig::uniform(5, NoiseSpec::flip(0.2).unwrap(), QecConfig::NONE).unwrap();
        assert_eq!(analytic_error(&flip), Some(e1_flip_nparty(0.2, 5).unwrap()));
        let rep = flip.clone().with_qec(QecConfig::new(QecScheme::Repetition, QecMode::SingleCycle)).unwrap();
        assert!((analytic_error(&rep).unwrap() - ef_flip_nparty(0.2, 5).unwrap()).abs() < 1e-12);
        let damp = ProtocolConfig::uniform(3, NoiseSpec::damping(0.4).unwrap(), QecConfig::NONE).unwrap();
        assert!((analytic_error(&damp).unwrap() - e1_damp(0.4).unwrap()).abs() < 1e-12);
        let rep = damp.with_qec(QecConfig::new(QecScheme::Repetition, QecMode::SingleCycle)).unwrap();
        assert!((analytic_error(&rep).unwrap() - ef_damp(0.4).unwrap()).abs() < 1e-12);
        let four = ProtocolConfig::uniform(4, NoiseSpec::damping(0.4).unwrap(), QecConfig::NONE).unwrap();
        assert_eq!(analytic_error(&four), None);
        let five = ProtocolConfig::uniform(
            3,
            NoiseSpec::flip(0.1).unwrap(),
            QecConfig::new(QecScheme::FiveQubit, QecMode::PerHop),
        )
        .unwrap();
        assert_eq!(analytic_error(&five), None);
        let uneven = ProtocolConfig::uniform(3, NoiseSpec::pauli(0.1, 0.2).unwrap(), QecConfig::NONE).unwrap();
        assert_eq!(analytic_error(&uneven), None);
    }
}
