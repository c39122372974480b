//! The five-qubit perfect code.
//!
//! The decoded frame is `|s1⟩ ⊗ |data⟩ ⊗ |s2⟩` with two-qubit syndrome
//! registers on either side of the data, so recovery operator `R_k`
//! (`k = 4·s1 + s2`) is `|00⟩⟨s1| ⊗ σ_k ⊗ |00⟩⟨s2|`. The encoder is chosen
//! so that this fixed table is the correct one: it sends `|s1 b s2⟩` to
//! `E_k σ_k |b_L⟩`, where `E_0 = I` and `E_1 … E_15` are the single-qubit
//! Paulis in qubit-major order (X, Y, Z on qubit 0, then qubit 1, …).
//! Any single-qubit Pauli then decodes to syndrome `k` with the residual
//! logical Pauli undone by `σ_k`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::OnceLock;

use crate::error::{QssError, Result};
use crate::qstate::kernel::{self, Mat, C, ZERO};
use crate::qstate::{gates, DensityMatrix, KrausChannel, Operator, StateVector};

use super::decoder::Decoder;

pub const FIVE_QUBITS: usize = 5;
/// Position of the data qubit after decoding.
pub const FIVE_DATA_QUBIT: usize = 2;

const DIM: usize = 1 << FIVE_QUBITS;

/// `(sign, basis label)` terms of the two codewords, amplitude `±1/(2√2)`.
const ZERO_L: [(f64, &str); 8] = [
    (-1.0, "00000"),
    (1.0, "00110"),
    (1.0, "01001"),
    (1.0, "01111"),
    (-1.0, "10011"),
    (1.0, "10101"),
    (1.0, "11010"),
    (1.0, "11100"),
];
const ONE_L: [(f64, &str); 8] = [
    (-1.0, "11111"),
    (1.0, "11001"),
    (1.0, "10110"),
    (1.0, "10000"),
    (1.0, "01100"),
    (-1.0, "01010"),
    (-1.0, "00101"),
    (-1.0, "00011"),
];

#[derive(Clone, Copy)]
enum DataPauli {
    I,
    X,
    Z,
    /// The product `X·Z`.
    XZ,
}

const RECOVERY_PAULIS: [DataPauli; 16] = {
    use DataPauli::*;
    [I, Z, I, I, I, Z, X, X, I, X, Z, X, Z, XZ, X, Z]
};

fn data_pauli(p: DataPauli) -> Mat {
    let x = gates::pauli_x();
    let z = gates::pauli_z();
    match p {
        DataPauli::I => Mat::identity(2, 2),
        DataPauli::X => x.matrix().clone(),
        DataPauli::Z => z.matrix().clone(),
        DataPauli::XZ => x.matrix() * z.matrix(),
    }
}

fn codeword(terms: &[(f64, &str); 8]) -> StateVector {
    let amp = 0.5 * FRAC_1_SQRT_2;
    let mut v = vec![ZERO; DIM];
    for &(sign, label) in terms {
        let idx = usize::from_str_radix(label, 2).expect("binary label");
        v[idx] = C::new(sign * amp, 0.0);
    }
    StateVector::from_raw(v.into())
}

pub fn five_logical_zero() -> StateVector {
    codeword(&ZERO_L)
}

pub fn five_logical_one() -> StateVector {
    codeword(&ONE_L)
}

/// `α|0_L⟩ + β|1_L⟩` for `ψ = α|0⟩ + β|1⟩`.
pub fn five_encode(psi: &StateVector) -> Result<StateVector> {
    single_qubit(psi)?;
    let a = psi.amplitudes();
    let v = five_logical_zero().amplitudes() * a[0] + five_logical_one().amplitudes() * a[1];
    Ok(StateVector::from_raw(v))
}

pub(crate) fn single_qubit(psi: &StateVector) -> Result<()> {
    if psi.num_qubits() != 1 {
        return Err(QssError::DimensionMismatch {
            expected: 2,
            actual: psi.dim(),
        });
    }
    Ok(())
}

/// Single-qubit Pauli error number `k` (1-based), qubit-major X, Y, Z.
fn error_pauli(k: usize) -> Mat {
    if k == 0 {
        return Mat::identity(DIM, DIM);
    }
    let qubit = (k - 1) / 3;
    let p = match (k - 1) % 3 {
        0 => gates::pauli_x(),
        1 => gates::pauli_y(),
        _ => gates::pauli_z(),
    };
    kernel::lift(p.matrix(), &[qubit], FIVE_QUBITS)
}

fn build_encoder() -> Operator {
    let logical = Mat::from_fn(DIM, 2, |i, b| {
        let w = if b == 0 { five_logical_zero() } else { five_logical_one() };
        w.amplitudes()[i]
    });
    let mut enc = Mat::zeros(DIM, DIM);
    for (k, &pauli) in RECOVERY_PAULIS.iter().enumerate() {
        let (s1, s2) = (k >> 2, k & 3);
        let corrected = error_pauli(k) * &logical * data_pauli(pauli);
        for b in 0..2 {
            enc.set_column((s1 << 3) | (b << 2) | s2, &corrected.column(b));
        }
    }
    Operator::from_raw(enc)
}

/// Unitary with `Enc(|00⟩|b⟩|00⟩) = |b_L⟩`.
pub fn five_encoding_unitary() -> &'static Operator {
    static ENC: OnceLock<Operator> = OnceLock::new();
    ENC.get_or_init(build_encoder)
}

/// `R_0 … R_15` on the decoded frame.
pub fn five_recovery_operators() -> &'static [Operator] {
    static OPS: OnceLock<Vec<Operator>> = OnceLock::new();
    OPS.get_or_init(|| {
        (0..16)
            .map(|k| {
                let (s1, s2) = (k >> 2, k & 3);
                let left = kernel::unit(4, 0, s1);
                let right = kernel::unit(4, 0, s2);
                let m = left.kronecker(&data_pauli(RECOVERY_PAULIS[k])).kronecker(&right);
                Operator::from_raw(m)
            })
            .collect()
    })
}

pub fn five_recovery_channel() -> &'static KrausChannel {
    static CH: OnceLock<KrausChannel> = OnceLock::new();
    CH.get_or_init(|| {
        KrausChannel::new(five_recovery_operators().to_vec()).expect("recovery set is complete")
    })
}

/// Inverse encoding, recovery, and tracing out of the syndrome registers.
pub fn five_recover_decode(rho5: &DensityMatrix) -> Result<DensityMatrix> {
    if rho5.num_qubits() != FIVE_QUBITS {
        return Err(QssError::DimensionMismatch {
            expected: DIM,
            actual: rho5.dim(),
        });
    }
    let enc = five_encoding_unitary().matrix();
    let frame = enc.adjoint() * rho5.matrix() * enc;
    let all: Vec<usize> = (0..FIVE_QUBITS).collect();
    let recovered = five_recovery_channel().apply_raw(&frame, &all, FIVE_QUBITS);
    Ok(DensityMatrix::from_raw(kernel::partial_trace(
        &recovered,
        FIVE_QUBITS,
        &[FIVE_DATA_QUBIT],
    )))
}

/// `Enc (I ⊗ I ⊗ u ⊗ I ⊗ I) Enc†`.
pub fn five_logical(u: &Operator) -> Result<Operator> {
    if u.num_qubits() != 1 {
        return Err(QssError::DimensionMismatch {
            expected: 2,
            actual: u.dim(),
        });
    }
    if !u.is_unitary() {
        return Err(QssError::NotUnitary(u.unitary_deviation()));
    }
    let enc = five_encoding_unitary().matrix();
    let lifted = kernel::lift(u.matrix(), &[FIVE_DATA_QUBIT], FIVE_QUBITS);
    Ok(Operator::from_raw(enc * lifted * enc.adjoint()))
}

/// Logical `u` that acts as `u` on every error image `E_k span{|0_L⟩, |1_L⟩}`,
/// so it commutes with all correctable single-qubit Paulis.
///
/// [`five_logical`] agrees with it on the code space but, applied after an
/// error, leaves the syndrome register holding `σ_k u σ_k` instead of `u`.
pub fn five_logical_covariant(u: &Operator) -> Result<Operator> {
    let sectors: Vec<[Mat; 2]> = (0..16)
        .map(|k| {
            let e = error_pauli(k);
            [five_logical_zero(), five_logical_one()].map(|w| &e * Mat::from_column_slice(DIM, 1, w.amplitudes().as_slice()))
        })
        .collect();
    super::sector_logical(u, &sectors)
}

pub(crate) fn five_decoder() -> &'static Decoder {
    static DEC: OnceLock<Decoder> = OnceLock::new();
    DEC.get_or_init(|| {
        let enc = five_encoding_unitary().matrix();
        let maps = five_recovery_operators()
            .iter()
            .map(|r| r.matrix() * enc.adjoint());
        Decoder::new(enc, FIVE_DATA_QUBIT, FIVE_QUBITS, maps)
    })
}
