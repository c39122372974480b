//! Standard single- and two-qubit gates.

use std::f64::consts::FRAC_1_SQRT_2;

use super::kernel::{Mat, C, ONE, ZERO};
use super::operator::Operator;

fn op(rows: [[C; 2]; 2]) -> Operator {
    Operator::from_raw(Mat::from_row_slice(
        2,
        2,
        &[rows[0][0], rows[0][1], rows[1][0], rows[1][1]],
    ))
}

pub fn identity() -> Operator {
    Operator::identity(1)
}

pub fn pauli_x() -> Operator {
    op([[ZERO, ONE], [ONE, ZERO]])
}

/// Hermitian Pauli Y, `[[0, -i], [i, 0]]`.
pub fn pauli_y() -> Operator {
    let i = C::new(0.0, 1.0);
    op([[ZERO, -i], [i, ZERO]])
}

pub fn pauli_z() -> Operator {
    op([[ONE, ZERO], [ZERO, -ONE]])
}

/// Real form `|0⟩⟨1| − |1⟩⟨0| = iY` used for the protocol's party operation.
pub fn real_sigma_y() -> Operator {
    op([[ZERO, ONE], [-ONE, ZERO]])
}

pub fn hadamard() -> Operator {
    let h = C::new(FRAC_1_SQRT_2, 0.0);
    op([[h, h], [h, -h]])
}

/// Controlled-NOT with the control on the first (high-order) qubit.
pub fn cnot() -> Operator {
    let mut m = Mat::zeros(4, 4);
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    m[(2, 3)] = ONE;
    m[(3, 2)] = ONE;
    Operator::from_raw(m)
}
