use super::kernel::{self, Mat, C};
use crate::error::{QssError, Result};
use crate::tolerance::ALGEBRAIC;

/// A square operator on a register of one or more qubits.
///
/// The unitary flag is computed at construction (`U†U = I` within
/// [`ALGEBRAIC`]) and never trusted from the caller.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    matrix: Mat,
    unitary: bool,
}

impl Operator {
    pub fn new(matrix: Mat) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(QssError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if kernel::qubits_of(matrix.nrows()).is_none() {
            return Err(QssError::NotPowerOfTwo(matrix.nrows()));
        }
        if !kernel::all_finite(&matrix) {
            return Err(QssError::NonFinite("operator"));
        }
        let unitary = kernel::identity_deviation(&(matrix.adjoint() * &matrix)) <= ALGEBRAIC;
        Ok(Self { matrix, unitary })
    }

    /// Like [`Operator::new`] but rejects anything that is not unitary.
    pub fn unitary(matrix: Mat) -> Result<Self> {
        let op = Self::new(matrix)?;
        if op.unitary {
            Ok(op)
        } else {
            Err(QssError::NotUnitary(op.unitary_deviation()))
        }
    }

    /// Real-valued operator from row-major entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(QssError::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Self::new(Mat::from_row_iterator(
            dim,
            dim,
            entries.iter().map(|&x| C::new(x, 0.0)),
        ))
    }

    pub fn identity(qubits: usize) -> Self {
        let d = 1usize << qubits;
        Self {
            matrix: Mat::identity(d, d),
            unitary: true,
        }
    }

    /// `|row⟩⟨col|` on `qubits` qubits.
    pub fn ket_bra(qubits: usize, row: usize, col: usize) -> Self {
        Self {
            matrix: kernel::unit(1 << qubits, row, col),
            unitary: false,
        }
    }

    pub(crate) fn from_raw(matrix: Mat) -> Self {
        let unitary = kernel::identity_deviation(&(matrix.adjoint() * &matrix)) <= ALGEBRAIC;
        Self { matrix, unitary }
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn unitary_deviation(&self) -> f64 {
        kernel::identity_deviation(&(self.matrix.adjoint() * &self.matrix))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            unitary: self.unitary,
        }
    }

    /// Operator product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Operator) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(QssError::DimensionMismatch {
                expected: self.dim(),
                actual: rhs.dim(),
            });
        }
        Ok(Self::from_raw(&self.matrix * &rhs.matrix))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_raw(self.matrix.scale(factor))
    }

    pub fn approx_eq(&self, other: &Operator, tol: f64) -> bool {
        self.dim() == other.dim() && kernel::max_abs_diff(&self.matrix, &other.matrix) <= tol
    }
}
