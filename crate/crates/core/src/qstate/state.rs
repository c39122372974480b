use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DVector;

use super::kernel::{self, C, ONE, ZERO};
use crate::error::{QssError, Result};
use crate::tolerance::ALGEBRAIC;

/// Normalized pure state of one or more qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: DVector<C>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized within [`ALGEBRAIC`].
    pub fn new(amps: Vec<C>) -> Result<Self> {
        let amps = Self::checked(amps)?;
        let norm = amps.norm();
        if (norm - 1.0).abs() > ALGEBRAIC {
            return Err(QssError::NotNormalized(norm));
        }
        Ok(Self { amps })
    }

    /// Normalizes the given amplitudes.
    pub fn normalized(amps: Vec<C>) -> Result<Self> {
        let amps = Self::checked(amps)?;
        let norm = amps.norm();
        if norm == 0.0 {
            return Err(QssError::NotNormalized(0.0));
        }
        Ok(Self {
            amps: amps.unscale(norm),
        })
    }

    fn checked(amps: Vec<C>) -> Result<DVector<C>> {
        if kernel::qubits_of(amps.len()).is_none() {
            return Err(QssError::NotPowerOfTwo(amps.len()));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QssError::NonFinite("state vector"));
        }
        Ok(DVector::from_vec(amps))
    }

    pub(crate) fn from_raw(amps: DVector<C>) -> Self {
        Self { amps }
    }

    /// Computational basis state `|index⟩` on `qubits` qubits.
    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amps = DVector::from_element(1 << qubits, ZERO);
        amps[index] = ONE;
        Self { amps }
    }

    pub fn zero() -> Self {
        Self::basis(1, 0)
    }

    pub fn one() -> Self {
        Self::basis(1, 1)
    }

    pub fn plus() -> Self {
        Self::from_raw(DVector::from_vec(vec![
            C::new(FRAC_1_SQRT_2, 0.0),
            C::new(FRAC_1_SQRT_2, 0.0),
        ]))
    }

    pub fn minus() -> Self {
        Self::from_raw(DVector::from_vec(vec![
            C::new(FRAC_1_SQRT_2, 0.0),
            C::new(-FRAC_1_SQRT_2, 0.0),
        ]))
    }

    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        Self::from_raw(DVector::from_vec(vec![
            C::new((theta / 2.0).cos(), 0.0),
            C::from_polar((theta / 2.0).sin(), phi),
        ]))
    }

    pub fn amplitudes(&self) -> &DVector<C> {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C> {
        if self.dim() != other.dim() {
            return Err(QssError::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }
}
