//! The four-qubit approximate code for amplitude damping.
//!
//! Codewords `(|0000⟩+|1111⟩)/√2` and `(|0011⟩+|1100⟩)/√2`. Recovery reads
//! the parities of the pairs (0,1) and (2,3):
//!
//! * both even: rotate `|0000⟩, |1111⟩` by `θ(γ) = π/4 − arctan((1−γ)²)`,
//!   which rebalances the no-damping branch `E_0^{⊗4}`;
//! * exactly one odd: the other bit of that pair names the damped qubit,
//!   and a fixed isometry maps the two surviving states back to the code;
//! * both odd: two damping events, replaced by `|0_L⟩`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{check_probability, QssError, Result};
use crate::qstate::kernel::{self, Mat, C, ONE};
use crate::qstate::{DensityMatrix, KrausChannel, Operator, StateVector};

use super::decoder::Decoder;
use super::five_qubit::single_qubit;

pub const FOUR_QUBITS: usize = 4;
/// Position of the data qubit after decoding.
pub const FOUR_DATA_QUBIT: usize = 0;

const DIM: usize = 1 << FOUR_QUBITS;
const ALL_ONES: usize = 0b1111;

/// Per damped qubit: the states mapped to `|0_L⟩` and `|1_L⟩`.
const SINGLE_DAMP: [(usize, usize); 4] = [
    (0b0111, 0b0100),
    (0b1011, 0b1000),
    (0b1101, 0b0001),
    (0b1110, 0b0010),
];

fn bit(index: usize, qubit: usize) -> bool {
    index >> (FOUR_QUBITS - 1 - qubit) & 1 == 1
}

/// Outcome of the two pair-parity measurements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome {
    pub pair1_parity: bool,
    pub pair2_parity: bool,
    /// Present exactly when one parity is odd.
    pub damped_qubit: Option<usize>,
}

impl Syndrome {
    /// Syndrome read off a computational basis state of the register.
    pub fn of_basis_state(index: usize) -> Result<Self> {
        if index >= DIM {
            return Err(QssError::OutOfRange {
                name: "basis index",
                value: index as f64,
                lo: 0.0,
                hi: (DIM - 1) as f64,
            });
        }
        let pair1_parity = bit(index, 0) ^ bit(index, 1);
        let pair2_parity = bit(index, 2) ^ bit(index, 3);
        let damped_qubit = match (pair1_parity, pair2_parity) {
            (true, false) => Some(usize::from(bit(index, 0))),
            (false, true) => Some(2 + usize::from(bit(index, 2))),
            _ => None,
        };
        Ok(Self {
            pair1_parity,
            pair2_parity,
            damped_qubit,
        })
    }

    pub fn is_correctable(&self) -> bool {
        !(self.pair1_parity && self.pair2_parity)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parity = |odd: bool| if odd { "odd" } else { "even" };
        write!(f, "({},{})", parity(self.pair1_parity), parity(self.pair2_parity))?;
        if let Some(q) = self.damped_qubit {
            write!(f, " damped qubit {q}")?;
        }
        Ok(())
    }
}

fn codeword_vec(b: usize) -> Mat {
    let h = C::new(FRAC_1_SQRT_2, 0.0);
    let mut v = Mat::zeros(DIM, 1);
    let (x, y) = if b == 0 { (0b0000, 0b1111) } else { (0b0011, 0b1100) };
    v[(x, 0)] = h;
    v[(y, 0)] = h;
    v
}

pub fn four_logical_zero() -> StateVector {
    StateVector::from_raw(codeword_vec(0).column(0).into_owned())
}

pub fn four_logical_one() -> StateVector {
    StateVector::from_raw(codeword_vec(1).column(0).into_owned())
}

pub fn four_encode(psi: &StateVector) -> Result<StateVector> {
    single_qubit(psi)?;
    let a = psi.amplitudes();
    let v = four_logical_zero().amplitudes() * a[0] + four_logical_one().amplitudes() * a[1];
    Ok(StateVector::from_raw(v))
}

fn build_encoder() -> Operator {
    // codewords first, then Gram-Schmidt over the standard basis
    let mut basis: Vec<Mat> = vec![codeword_vec(0), codeword_vec(1)];
    for i in 0..DIM {
        let mut v = kernel::unit(DIM, i, 0).columns(0, 1).into_owned();
        for u in &basis {
            let overlap = (u.adjoint() * &v)[(0, 0)];
            v -= u * overlap;
        }
        let norm = v.norm();
        if norm > 1e-9 {
            basis.push(v.unscale(norm));
        }
    }
    debug_assert_eq!(basis.len(), DIM);
    let half = DIM / 2;
    let mut enc = Mat::zeros(DIM, DIM);
    let mut rest = basis[2..].iter();
    for col in 0..DIM {
        let v = match col {
            0 => &basis[0],
            c if c == half => &basis[1],
            _ => rest.next().expect("sixteen basis vectors"),
        };
        enc.set_column(col, &v.column(0));
    }
    Operator::from_raw(enc)
}

/// Unitary with `Enc₄(|b⟩|000⟩) = |b_L⟩`.
pub fn four_encoding_unitary() -> &'static Operator {
    static ENC: OnceLock<Operator> = OnceLock::new();
    ENC.get_or_init(build_encoder)
}

/// Rotation angle of the even-even branch.
pub fn rebalance_angle(gamma: f64) -> Result<f64> {
    check_probability("gamma", gamma)?;
    let q = 1.0 - gamma;
    Ok(FRAC_PI_4 - (q * q).atan())
}

/// Syndrome-labelled Kraus operators of the recovery, each mapping the
/// received register back into the code space (or onto `|0_L⟩`).
pub fn four_recovery_branches(gamma: f64) -> Result<Vec<(Syndrome, Operator)>> {
    let theta = rebalance_angle(gamma)?;
    let (c, s) = (C::new(theta.cos(), 0.0), C::new(theta.sin(), 0.0));
    let zero_l = codeword_vec(0);
    let one_l = codeword_vec(1);

    let mut branches = Vec::with_capacity(9);
    let mut even = Mat::zeros(DIM, DIM);
    for idx in [0b0011, 0b1100] {
        even[(idx, idx)] = ONE;
    }
    even[(0, 0)] = c;
    even[(ALL_ONES, 0)] = s;
    even[(0, ALL_ONES)] = -s;
    even[(ALL_ONES, ALL_ONES)] = c;
    branches.push((Syndrome::of_basis_state(0)?, Operator::from_raw(even)));

    for &(to_zero, to_one) in &SINGLE_DAMP {
        let m = &zero_l * kernel::unit(DIM, to_zero, 0).columns(0, 1).adjoint()
            + &one_l * kernel::unit(DIM, to_one, 0).columns(0, 1).adjoint();
        branches.push((Syndrome::of_basis_state(to_zero)?, Operator::from_raw(m)));
    }
    for idx in [0b0101, 0b0110, 0b1001, 0b1010] {
        let m = &zero_l * kernel::unit(DIM, idx, 0).columns(0, 1).adjoint();
        branches.push((Syndrome::of_basis_state(idx)?, Operator::from_raw(m)));
    }
    Ok(branches)
}

pub fn four_recovery_channel(gamma: f64) -> Result<KrausChannel> {
    KrausChannel::new(four_recovery_branches(gamma)?.into_iter().map(|(_, k)| k).collect())
}

/// Syndrome recovery, inverse encoding, and tracing out of the ancillas.
///
/// `γ = 1` is accepted; the rotation angle is then `π/4`.
pub fn four_recover_decode(rho4: &DensityMatrix, gamma: f64) -> Result<DensityMatrix> {
    if rho4.num_qubits() != FOUR_QUBITS {
        return Err(QssError::DimensionMismatch {
            expected: DIM,
            actual: rho4.dim(),
        });
    }
    let all: Vec<usize> = (0..FOUR_QUBITS).collect();
    let recovered = four_recovery_channel(gamma)?.apply_raw(rho4.matrix(), &all, FOUR_QUBITS);
    let enc = four_encoding_unitary().matrix();
    let frame = enc.adjoint() * recovered * enc;
    Ok(DensityMatrix::from_raw(kernel::partial_trace(
        &frame,
        FOUR_QUBITS,
        &[FOUR_DATA_QUBIT],
    )))
}

/// `Enc₄ (u ⊗ I ⊗ I ⊗ I) Enc₄†`.
pub fn four_logical(u: &Operator) -> Result<Operator> {
    if u.num_qubits() != 1 {
        return Err(QssError::DimensionMismatch {
            expected: 2,
            actual: u.dim(),
        });
    }
    if !u.is_unitary() {
        return Err(QssError::NotUnitary(u.unitary_deviation()));
    }
    let enc = four_encoding_unitary().matrix();
    let lifted = kernel::lift(u.matrix(), &[FOUR_DATA_QUBIT], FOUR_QUBITS);
    Ok(Operator::from_raw(enc * lifted * enc.adjoint()))
}

/// Logical `u` acting as `u` on the code space, on its orthogonal partner
/// inside the even-even sector, and on each single-damping image; the
/// identity on the doubly-damped states.
pub fn four_logical_covariant(u: &Operator) -> Result<Operator> {
    let h = C::new(FRAC_1_SQRT_2, 0.0);
    let ket = |i: usize| kernel::unit(DIM, i, 0).columns(0, 1).into_owned();
    let mut sectors = vec![
        [codeword_vec(0), codeword_vec(1)],
        [
            (ket(0b0000) - ket(ALL_ONES)) * h,
            (ket(0b0011) - ket(0b1100)) * h,
        ],
    ];
    for &(to_zero, to_one) in &SINGLE_DAMP {
        sectors.push([ket(to_zero), ket(to_one)]);
    }
    super::sector_logical(u, &sectors)
}

pub(crate) fn four_decoder(gamma: f64) -> Result<Decoder> {
    let enc = four_encoding_unitary().matrix();
    let maps: Vec<Mat> = four_recovery_branches(gamma)?
        .into_iter()
        .map(|(_, k)| enc.adjoint() * k.matrix())
        .collect();
    Ok(Decoder::new(enc, FOUR_DATA_QUBIT, FOUR_QUBITS, maps))
}
