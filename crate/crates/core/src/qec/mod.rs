//! Error-correcting codes: three-copy repetition with majority vote, the
//! five-qubit perfect code and the four-qubit approximate damping code.

mod decoder;
mod five_qubit;
mod four_qubit;
mod repetition;

use serde::{Deserialize, Serialize};

use crate::error::{QssError, Result};
use crate::qstate::{DensityMatrix, KrausChannel, Operator, StateVector, Tensor};

pub(crate) use decoder::Decoder;
pub(crate) use five_qubit::five_decoder;
pub(crate) use four_qubit::four_decoder;

pub use five_qubit::{
    five_encode, five_encoding_unitary, five_logical, five_logical_covariant, five_logical_one, five_logical_zero,
    five_recover_decode, five_recovery_channel, five_recovery_operators, FIVE_DATA_QUBIT, FIVE_QUBITS,
};
pub use four_qubit::{
    four_encode, four_encoding_unitary, four_logical, four_logical_covariant, four_logical_one, four_logical_zero,
    four_recover_decode, four_recovery_branches, four_recovery_channel, rebalance_angle, Syndrome,
    FOUR_DATA_QUBIT, FOUR_QUBITS,
};
pub use repetition::rep3_majority;

use crate::qstate::kernel::Mat;

/// `u` applied inside each two-dimensional sector `span{x₀, x₁}` and the
/// identity on whatever the sectors leave uncovered.
///
/// With the code space and its images under each correctable error as the
/// sectors, the result commutes with those errors, so an error that struck
/// before the gate is still corrected afterwards.
pub(crate) fn sector_logical(u: &Operator, sectors: &[[Mat; 2]]) -> Result<Operator> {
    if u.num_qubits() != 1 {
        return Err(QssError::DimensionMismatch {
            expected: 2,
            actual: u.dim(),
        });
    }
    if !u.is_unitary() {
        return Err(QssError::NotUnitary(u.unitary_deviation()));
    }
    let d = sectors[0][0].nrows();
    let mut out = Mat::identity(d, d);
    for pair in sectors {
        for b in 0..2 {
            out -= &pair[b] * pair[b].adjoint();
            for c in 0..2 {
                out += &pair[b] * pair[c].adjoint() * u.matrix()[(b, c)];
            }
        }
    }
    Ok(Operator::from_raw(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodeName {
    Rep3,
    Five,
    Four,
}

/// A code together with its physical size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub name: CodeName,
    pub physical_qubits: usize,
}

impl CodeSpec {
    pub fn new(name: CodeName) -> Self {
        let physical_qubits = match name {
            CodeName::Rep3 => 3,
            CodeName::Five => FIVE_QUBITS,
            CodeName::Four => FOUR_QUBITS,
        };
        Self {
            name,
            physical_qubits,
        }
    }

    /// Encodes a single-qubit state. The repetition code is three copies.
    pub fn encode(&self, psi: &StateVector) -> Result<StateVector> {
        match self.name {
            CodeName::Rep3 => {
                five_qubit::single_qubit(psi)?;
                Ok(psi.tensor(psi).tensor(psi))
            }
            CodeName::Five => five_encode(psi),
            CodeName::Four => four_encode(psi),
        }
    }

    /// Recovery and decoding; `gamma` only matters for the four-qubit code.
    pub fn recover_decode(&self, rho: &DensityMatrix, gamma: f64) -> Result<DensityMatrix> {
        match self.name {
            CodeName::Rep3 => Err(QssError::InvalidConfig(
                "the repetition code is decoded classically by majority vote".into(),
            )),
            CodeName::Five => five_recover_decode(rho),
            CodeName::Four => four_recover_decode(rho, gamma),
        }
    }

    pub fn recovery(&self, gamma: f64) -> Result<RecoveryMap> {
        match self.name {
            CodeName::Rep3 => Err(QssError::InvalidConfig(
                "the repetition code has no quantum recovery map".into(),
            )),
            CodeName::Five => Ok(RecoveryMap {
                operators: five_recovery_operators().to_vec(),
            }),
            CodeName::Four => Ok(RecoveryMap {
                operators: four_recovery_branches(gamma)?.into_iter().map(|(_, k)| k).collect(),
            }),
        }
    }
}

/// Kraus operators of a recovery operation on the full register.
#[derive(Clone, Debug)]
pub struct RecoveryMap {
    pub operators: Vec<Operator>,
}

impl RecoveryMap {
    pub fn completeness_deviation(&self) -> f64 {
        self.channel().map_or(f64::INFINITY, |c| c.completeness_deviation())
    }

    pub fn channel(&self) -> Result<KrausChannel> {
        KrausChannel::new(self.operators.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::ALGEBRAIC;

    #[test]
    fn specs() {
        assert_eq!(CodeSpec::new(CodeName::Rep3).physical_qubits, 3);
        assert_eq!(CodeSpec::new(CodeName::Five).physical_qubits, 5);
        assert_eq!(CodeSpec::new(CodeName::Four).physical_qubits, 4);
    }

    #[test]
    fn encoders_preserve_orthonormality() {
        for name in [CodeName::Rep3, CodeName::Five, CodeName::Four] {
            let spec = CodeSpec::new(name);
            let z = spec.encode(&StateVector::zero()).unwrap();
            let o = spec.encode(&StateVector::one()).unwrap();
            assert_eq!(z.num_qubits(), spec.physical_qubits);
            assert!(z.inner(&o).unwrap().norm() < ALGEBRAIC);
            assert!((o.norm() - 1.0).abs() < ALGEBRAIC);
        }
    }

    #[test]
    fn recovery_maps_are_complete() {
        for name in [CodeName::Five, CodeName::Four] {
            let r = CodeSpec::new(name).recovery(0.2).unwrap();
            assert!(r.completeness_deviation() < ALGEBRAIC);
        }
        assert!(CodeSpec::new(CodeName::Rep3).recovery(0.0).is_err());
    }
}
