//! Analytic error probabilities for the protocol.
//!
//! Nothing in here touches the simulator: these functions are the oracle the
//! exact enumeration is checked against, and vice versa. Half-integer powers
//! `(1−γ)^{k/2}` are built from `sqrt` and products so `γ = 1` is exact.

use crate::error::{check_probability, QssError, Result};
use crate::protocol::{PartyOp, Preparation, SecretBit};

/// Flip probabilities for the three hops of the three-party protocol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlipParams {
    pub p_a: f64,
    pub p_b: f64,
    pub p_c: f64,
}

impl FlipParams {
    pub fn new(p_a: f64, p_b: f64, p_c: f64) -> Result<Self> {
        check_probability("p_A", p_a)?;
        check_probability("p_B", p_b)?;
        check_probability("p_C", p_c)?;
        Ok(Self { p_a, p_b, p_c })
    }

    pub fn uniform(p: f64) -> Result<Self> {
        Self::new(p, p, p)
    }
}

/// Damping strengths: `gamma_a` sender → first receiver, `gamma_b`
/// preparer → first receiver, `gamma_c` first receiver → sender.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DampParams {
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub gamma_c: f64,
}

impl DampParams {
    pub fn new(gamma_a: f64, gamma_b: f64, gamma_c: f64) -> Result<Self> {
        check_probability("gamma_A", gamma_a)?;
        check_probability("gamma_B", gamma_b)?;
        check_probability("gamma_C", gamma_c)?;
        Ok(Self {
            gamma_a,
            gamma_b,
            gamma_c,
        })
    }

    pub fn uniform(gamma: f64) -> Result<Self> {
        Self::new(gamma, gamma, gamma)
    }

    /// Hop order used by the simulator: preparer hop, receiver → sender,
    /// sender → receiver.
    pub fn traversal_order(&self) -> [f64; 3] {
        [self.gamma_b, self.gamma_c, self.gamma_a]
    }
}

/// `(1 − x)^{3/2}`
fn pow_three_halves(one_minus: f64) -> f64 {
    one_minus * one_minus.sqrt()
}

/// `(1 − x)^{5/2}`
fn pow_five_halves(one_minus: f64) -> f64 {
    one_minus * one_minus * one_minus.sqrt()
}

/// Three-party wrong-bit probability under equal flip noise on every hop.
pub fn e1_flip(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    Ok(3.0 * p * (1.0 - p) * (1.0 - p) + p * p * p)
}

/// Probability of an odd number of flips over three hops.
pub fn e1_flip_three(p_a: f64, p_b: f64, p_c: f64) -> Result<f64> {
    let FlipParams { p_a, p_b, p_c } = FlipParams::new(p_a, p_b, p_c)?;
    let (qa, qb, qc) = (1.0 - p_a, 1.0 - p_b, 1.0 - p_c);
    Ok(qa * qc * p_b + qa * p_c * qb + p_a * qc * qb + p_a * p_c * p_b)
}

/// `½(1 − (1−2p)^n)`: odd number of flips over `n` equal hops.
pub fn e1_flip_nparty(p: f64, n: usize) -> Result<f64> {
    check_probability("p", p)?;
    if n == 0 {
        return Err(QssError::InvalidConfig("at least one hop is required".into()));
    }
    Ok(0.5 * (1.0 - (1.0 - 2.0 * p).powi(n as i32)))
}

/// `½(1 − Π(1−2pᵢ))` for per-hop flip probabilities.
pub fn e1_flip_hops(ps: &[f64]) -> Result<f64> {
    if ps.is_empty() {
        return Err(QssError::InvalidConfig("at least one hop is required".into()));
    }
    let mut prod = 1.0;
    for &p in ps {
        prod *= 1.0 - 2.0 * check_probability("p", p)?;
    }
    Ok(0.5 * (1.0 - prod))
}

/// Average three-party wrong-bit probability under equal damping.
pub fn e1_damp(gamma: f64) -> Result<f64> {
    check_probability("gamma", gamma)?;
    let g = gamma;
    let q = 1.0 - g;
    Ok((3.0 + 8.0 * g - 7.0 * g * g + 2.0 * g * g * g
        - 2.0 * pow_three_halves(q)
        - pow_five_halves(q))
        / 12.0)
}

/// Average three-party wrong-bit probability with per-hop damping.
pub fn e1_damp_general(gamma_a: f64, gamma_b: f64, gamma_c: f64) -> Result<f64> {
    let DampParams {
        gamma_a: a,
        gamma_b: b,
        gamma_c: c,
    } = DampParams::new(gamma_a, gamma_b, gamma_c)?;
    let (qa, qb, qc) = (1.0 - a, 1.0 - b, 1.0 - c);
    Ok((4.0 + 2.0 * (a + b + c) - 2.0 * (a * b + b * c + c * a) + 2.0 * a * b * c
        - qa * qc * qb.sqrt()
        - qb * (qa * qc).sqrt()
        - 2.0 * (qa * qb * qc).sqrt())
        / 12.0)
}

/// Wrong-bit probability of one tuple, three parties, equal damping.
pub fn table1_entry(prep: Preparation, op: PartyOp, secret: SecretBit, gamma: f64) -> Result<f64> {
    use PartyOp::*;
    use Preparation::*;
    check_probability("gamma", gamma)?;
    let g = gamma;
    let g2 = g * g;
    let g3 = g2 * g;
    let q = 1.0 - g;
    let s = secret.bit();
    Ok(match (prep, op) {
        (Zero, Identity) => if s { g } else { 0.0 },
        (Zero, PauliY) => if s { g - g2 } else { 2.0 * g - g2 },
        (Zero, Hadamard) => g / 2.0,
        (One, Identity) => {
            if s { 2.0 * g - 3.0 * g2 + g3 } else { 3.0 * g - 3.0 * g2 + g3 }
        }
        (One, PauliY) => {
            if s { 2.0 * g - 2.0 * g2 + g3 } else { g - 2.0 * g2 + g3 }
        }
        (One, Hadamard) => (3.0 * g - 2.0 * g2) / 2.0,
        (Plus | Minus, Identity | PauliY) => (1.0 - pow_three_halves(q)) / 2.0,
        (Plus, Hadamard) => {
            if s {
                (1.0 + g2 - pow_five_halves(q)) / 2.0
            } else {
                (1.0 - 2.0 * g + g2 - pow_five_halves(q)) / 2.0
            }
        }
        (Minus, Hadamard) => {
            if s {
                (1.0 - g2 - pow_five_halves(q)) / 2.0
            } else {
                (1.0 + 2.0 * g - g2 - pow_five_halves(q)) / 2.0
            }
        }
    })
}

/// Wrong-bit probability of one tuple, three parties, per-hop damping.
pub fn table2_entry(
    prep: Preparation,
    op: PartyOp,
    secret: SecretBit,
    gamma_a: f64,
    gamma_b: f64,
    gamma_c: f64,
) -> Result<f64> {
    use PartyOp::*;
    use Preparation::*;
    let DampParams {
        gamma_a: a,
        gamma_b: b,
        gamma_c: c,
    } = DampParams::new(gamma_a, gamma_b, gamma_c)?;
    let s = secret.bit();
    let (qa, qb, qc) = (1.0 - a, 1.0 - b, 1.0 - c);
    let outer = (qa * qc).sqrt();
    let all = (qa * qb * qc).sqrt();
    let through_h = qa * qc * qb.sqrt();
    let pairs = a * b + b * c + c * a;
    Ok(match (prep, op) {
        (Zero, Identity) => if s { a } else { 0.0 },
        (Zero, PauliY) => if s { c - a * c } else { a + c - a * c },
        (Zero, Hadamard) => (1.0 - outer) / 2.0,
        (One, Identity) => {
            if s {
                b + c - pairs + a * b * c
            } else {
                a + b + c - pairs + a * b * c
            }
        }
        (One, PauliY) => {
            if s {
                a + b - a * b - b * c + a * b * c
            } else {
                b - a * b - b * c + a * b * c
            }
        }
        (One, Hadamard) => (1.0 + (2.0 * b - 1.0) * outer) / 2.0,
        (Plus | Minus, Identity | PauliY) => (1.0 - all) / 2.0,
        (Plus, Hadamard) => {
            if s {
                (1.0 + a - c + a * c - through_h) / 2.0
            } else {
                (1.0 - a - c + a * c - through_h) / 2.0
            }
        }
        (Minus, Hadamard) => {
            if s {
                (1.0 - a + c - a * c - through_h) / 2.0
            } else {
                (1.0 + a + c - a * c - through_h) / 2.0
            }
        }
    })
}

/// Majority-of-three failure probability `3e²(1−e) + e³`.
pub fn e_majority(e: f64) -> Result<f64> {
    check_probability("e", e)?;
    Ok(3.0 * e * e * (1.0 - e) + e * e * e)
}

/// `¼(1 − (1−2p)^n)² (2 + (1−2p)^n)`: repetition-coded error over `n` hops.
pub fn ef_flip_nparty(p: f64, n: usize) -> Result<f64> {
    check_probability("p", p)?;
    if n == 0 {
        return Err(QssError::InvalidConfig("at least one hop is required".into()));
    }
    let x = (1.0 - 2.0 * p).powi(n as i32);
    Ok(0.25 * (1.0 - x) * (1.0 - x) * (2.0 + x))
}

/// Majority vote applied to the tuple-averaged damping error.
pub fn ef_damp(gamma: f64) -> Result<f64> {
    e_majority(e1_damp(gamma)?)
}

/// Whether the repetition code strictly lowers a non-zero error `e`.
pub fn correction_effective(e: f64) -> Result<bool> {
    check_probability("e", e)?;
    Ok(e > 0.0 && e < 0.5)
}
