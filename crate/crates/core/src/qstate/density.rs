use nalgebra::SymmetricEigen;

use super::kernel::{self, Mat};
use super::state::StateVector;
use crate::error::{QssError, Result};
use crate::tolerance::{ALGEBRAIC, MIN_EIGENVALUE};

/// Trace-one positive Hermitian operator on a qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: Mat,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
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
            return Err(QssError::NonFinite("density matrix"));
        }
        let rho = Self { matrix };
        rho.validate()?;
        Ok(rho)
    }

    pub fn from_pure(psi: &StateVector) -> Self {
        let v = psi.amplitudes();
        Self {
            matrix: v * v.adjoint(),
        }
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        Self::from_pure(&StateVector::basis(qubits, index))
    }

    pub fn maximally_mixed(qubits: usize) -> Self {
        let d = 1usize << qubits;
        Self {
            matrix: Mat::identity(d, d).unscale(d as f64),
        }
    }

    /// Wraps a matrix produced by a physical map, restoring exact Hermiticity.
    pub(crate) fn from_raw(matrix: Mat) -> Self {
        Self {
            matrix: kernel::symmetrize(matrix),
        }
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

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn validate(&self) -> Result<()> {
        let herm = kernel::hermitian_deviation(&self.matrix);
        if herm > ALGEBRAIC {
            return Err(QssError::InvalidDensity(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > ALGEBRAIC || tr.im.abs() > ALGEBRAIC {
            return Err(QssError::InvalidDensity(format!("trace {tr}")));
        }
        let min = self.eigenvalues()[0];
        if min < MIN_EIGENVALUE {
            return Err(QssError::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        self.dim() == other.dim() && kernel::max_abs_diff(&self.matrix, &other.matrix) <= tol
    }
}
