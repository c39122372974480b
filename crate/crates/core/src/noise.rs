//! The three single-qubit noise channels and their i.i.d. lift onto a register.


use crate::error::{check_probability, QssError, Result};
use crate::qstate::kernel::Mat;
use crate::qstate::{gates, DensityMatrix, KrausChannel, Operator};

/// Noise acting on one transmission hop.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseSpec {
    /// Independent bit flip then phase flip.
    Pauli { p_bit: f64, p_phase: f64 },
    AmplitudeDamping { gamma: f64 },
}

impl NoiseSpec {
    pub fn pauli(p_bit: f64, p_phase: f64) -> Result<Self> {
        check_probability("p_bit", p_bit)?;
        check_probability("p_phase", p_phase)?;
        Ok(Self::Pauli { p_bit, p_phase })
    }

    /// Equal bit- and phase-flip probability.
    pub fn flip(p: f64) -> Result<Self> {
        Self::pauli(p, p)
    }

    pub fn damping(gamma: f64) -> Result<Self> {
        check_probability("gamma", gamma)?;
        Ok(Self::AmplitudeDamping { gamma })
    }

    pub fn noiseless() -> Self {
        Self::Pauli {
            p_bit: 0.0,
            p_phase: 0.0,
        }
    }

    pub fn channel(&self) -> Result<KrausChannel> {
        match *self {
            Self::Pauli { p_bit, p_phase } => pauli_hop(p_bit, p_phase),
            Self::AmplitudeDamping { gamma } => amplitude_damping(gamma),
        }
    }

    /// Damping strength, zero for Pauli noise.
    pub fn gamma(&self) -> f64 {
        match *self {
            Self::AmplitudeDamping { gamma } => gamma,
            Self::Pauli { .. } => 0.0,
        }
    }

    pub fn is_noiseless(&self) -> bool {
        match *self {
            Self::Pauli { p_bit, p_phase } => p_bit == 0.0 && p_phase == 0.0,
            Self::AmplitudeDamping { gamma } => gamma == 0.0,
        }
    }
}

/// Noise for every hop of a protocol run, in traversal order: the first
/// receiver's incoming hop from the preparer, each receiver-to-receiver hop,
/// the last receiver to the sender, and the sender back to the first
/// receiver after the secret is encoded.
#[derive(Clone, Debug, PartialEq)]
pub struct HopAssignment(Vec<NoiseSpec>);

impl HopAssignment {
    pub fn new(hops: Vec<NoiseSpec>) -> Self {
        Self(hops)
    }

    pub fn uniform(spec: NoiseSpec, hops: usize) -> Self {
        Self(vec![spec; hops])
    }

    pub fn hops(&self) -> &[NoiseSpec] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_noiseless(&self) -> bool {
        self.0.iter().all(NoiseSpec::is_noiseless)
    }
}

/// `{√(1−p) I, √p X}`.
pub fn bit_flip(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    KrausChannel::new(vec![
        gates::identity().scaled((1.0 - p).sqrt()),
        gates::pauli_x().scaled(p.sqrt()),
    ])
}

/// `{√(1−p) I, √p Z}`.
pub fn phase_flip(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    KrausChannel::new(vec![
        gates::identity().scaled((1.0 - p).sqrt()),
        gates::pauli_z().scaled(p.sqrt()),
    ])
}

/// `E₀ = diag(1, √(1−γ))`, `E₁ = √γ |0⟩⟨1|`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    check_probability("gamma", gamma)?;
    KrausChannel::new(vec![
        Operator::from_real_rows(2, &[1.0, 0.0, 0.0, (1.0 - gamma).sqrt()])?,
        Operator::from_real_rows(2, &[0.0, gamma.sqrt(), 0.0, 0.0])?,
    ])
}

/// Phase flip after bit flip, as one four-operator channel.
pub fn pauli_hop(p_bit: f64, p_phase: f64) -> Result<KrausChannel> {
    bit_flip(p_bit)?.then(&phase_flip(p_phase)?)
}

/// A single-qubit channel applied independently to every qubit of a register.
#[derive(Clone, Debug)]
pub struct IidNoise {
    channel: KrausChannel,
    qubits: usize,
}

pub fn lift_iid(channel: &KrausChannel, qubits: usize) -> Result<IidNoise> {
    if qubits == 0 {
        return Err(QssError::NoQubits);
    }
    if channel.num_qubits() != 1 {
        return Err(QssError::DimensionMismatch {
            expected: 2,
            actual: channel.dim(),
        });
    }
    Ok(IidNoise {
        channel: channel.clone(),
        qubits,
    })
}

impl IidNoise {
    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn channel(&self) -> &KrausChannel {
        &self.channel
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.num_qubits() != self.qubits {
            return Err(QssError::DimensionMismatch {
                expected: self.qubits,
                actual: rho.num_qubits(),
            });
        }
        Ok(DensityMatrix::from_raw(self.apply_raw(rho.matrix().clone())))
    }

    /// Applies the channel to qubits in the given order.
    pub fn apply_in_order(&self, rho: &DensityMatrix, order: &[usize]) -> Result<DensityMatrix> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.qubits).collect::<Vec<_>>() {
            return Err(QssError::InvalidConfig(format!(
                "{order:?} is not a permutation of 0..{}",
                self.qubits
            )));
        }
        let m = order.iter().fold(rho.matrix().clone(), |m, &q| {
            self.channel.apply_raw(&m, &[q], self.qubits)
        });
        Ok(DensityMatrix::from_raw(m))
    }

    pub(crate) fn apply_raw(&self, m: Mat) -> Mat {
        (0..self.qubits).fold(m, |m, q| self.channel.apply_raw(&m, &[q], self.qubits))
    }
}

/// Index `i` such that the cumulative weight first exceeds `u · total`.
pub(crate) fn sample_index(weights: &[f64], u: f64) -> usize {
    let total: f64 = weights.iter().sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        last_positive = i;
        acc += w;
        if target < acc {
            return i;
        }
    }
    last_positive
}
