//! Teleportation whose two classical outcome bits travel through the
//! secret-sharing protocol.

use serde::Serialize;

use super::config::{ProtocolConfig, QecConfig};
use super::run::run_exact;
use crate::error::{check_probability, Result};
use crate::qec;
use crate::qstate::{apply_to_state, gates, StateVector, Tensor};

const CONVENTION: &str = "Bell pair (|00>+|11>)/sqrt(2) on qubits 1 (sender) and 2 (receiver); \
qubit 0 holds the input. The sender applies CNOT(0->1) then H(0) and measures a = qubit 0 \
(phase bit) and b = qubit 1 (flip bit). The receiver applies Z^a X^b.";

/// The teleportation circuit and correction convention used here.
pub fn correction_convention() -> &'static str {
    CONVENTION
}

/// Average fidelity of teleporting `psi` when the phase bit is flipped with
/// probability `e_phase` and the flip bit with probability `e_flip`,
/// independently.
pub fn teleport_fidelity(psi: &StateVector, e_phase: f64, e_flip: f64) -> Result<f64> {
    check_probability("e_phase", e_phase)?;
    check_probability("e_flip", e_flip)?;
    qec::five_encode(psi)?; // rejects anything but one qubit
    let bell = StateVector::normalized(vec![
        crate::qstate::Complex::new(1.0, 0.0),
        crate::qstate::Complex::new(0.0, 0.0),
        crate::qstate::Complex::new(0.0, 0.0),
        crate::qstate::Complex::new(1.0, 0.0),
    ])?;
    let state = psi.tensor(&bell);
    let state = apply_to_state(&state, &gates::cnot(), &[0, 1])?;
    let state = apply_to_state(&state, &gates::hadamard(), &[0])?;
    let amps = state.amplitudes();

    let flip_probs = |e: f64| [(false, 1.0 - e), (true, e)];
    let mut total = 0.0;
    for a in 0..2usize {
        for b in 0..2usize {
            let base = (a << 2) | (b << 1);
            let raw = vec![amps[base], amps[base | 1]];
            let p = raw.iter().map(|z| z.norm_sqr()).sum::<f64>();
            if p <= 0.0 {
                continue;
            }
            let bob = StateVector::normalized(raw)?;
            for (fa, pa) in flip_probs(e_phase) {
                for (fb, pb) in flip_probs(e_flip) {
                    let weight = p * pa * pb;
                    if weight == 0.0 {
                        continue;
                    }
                    let (ra, rb) = ((a == 1) ^ fa, (b == 1) ^ fb);
                    let mut out = bob.clone();
                    if rb {
                        out = apply_to_state(&out, &gates::pauli_x(), &[0])?;
                    }
                    if ra {
                        out = apply_to_state(&out, &gates::pauli_z(), &[0])?;
                    }
                    total += weight * psi.inner(&out)?.norm_sqr();
                }
            }
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Teleportation fidelity with both bits carried by the configured protocol.
pub fn run_ssqi(cfg: &ProtocolConfig, input: &StateVector) -> Result<f64> {
    let e = run_exact(cfg)?.error_exact.unwrap_or(0.0);
    teleport_fidelity(input, e, e)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SsqiComparison {
    pub e_noise: f64,
    pub e_qec: f64,
    pub fidelity_without_qec: f64,
    pub fidelity_with_qec: f64,
    /// `e_qec < e_noise`.
    pub qec_effective: bool,
    pub fidelity_improves: bool,
}

/// Teleportation with the configured code against the same noise uncoded.
pub fn compare_ssqi(cfg: &ProtocolConfig, input: &StateVector) -> Result<SsqiComparison> {
    let bare = cfg.clone().with_qec(QecConfig::NONE)?;
    let e_noise = run_exact(&bare)?.error_exact.unwrap_or(0.0);
    let e_qec = run_exact(cfg)?.error_exact.unwrap_or(0.0);
    let fidelity_without_qec = teleport_fidelity(input, e_noise, e_noise)?;
    let fidelity_with_qec = teleport_fidelity(input, e_qec, e_qec)?;
    Ok(SsqiComparison {
        e_noise,
        e_qec,
        fidelity_without_qec,
        fidelity_with_qec,
        qec_effective: e_qec < e_noise,
        fidelity_improves: fidelity_with_qec > fidelity_without_qec,
    })
}
