use super::kernel::{self, Mat};
use super::operator::Operator;
use crate::error::{QssError, Result};
use crate::tolerance::ALGEBRAIC;

/// A CPTP map given by Kraus operators, `ρ ↦ Σ K ρ K†`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    ops: Vec<Operator>,
}

impl KrausChannel {
    /// Rejects empty sets, mixed dimensions and `Σ K†K ≠ I`.
    pub fn new(ops: Vec<Operator>) -> Result<Self> {
        let first = ops.first().ok_or(QssError::EmptyChannel)?;
        let dim = first.dim();
        if let Some(bad) = ops.iter().find(|k| k.dim() != dim) {
            return Err(QssError::DimensionMismatch {
                expected: dim,
                actual: bad.dim(),
            });
        }
        let channel = Self { ops };
        let dev = channel.completeness_deviation();
        if dev > ALGEBRAIC {
            return Err(QssError::NotTracePreserving(dev));
        }
        Ok(channel)
    }

    pub fn identity(qubits: usize) -> Self {
        Self {
            ops: vec![Operator::identity(qubits)],
        }
    }

    pub fn operators(&self) -> &[Operator] {
        &self.ops
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    pub fn num_qubits(&self) -> usize {
        self.ops[0].num_qubits()
    }

    /// Largest entry of `Σ K†K − I`.
    pub fn completeness_deviation(&self) -> f64 {
        let d = self.dim();
        let sum = self
            .ops
            .iter()
            .fold(Mat::zeros(d, d), |acc, k| acc + k.matrix().adjoint() * k.matrix());
        kernel::identity_deviation(&sum)
    }

    /// `next ∘ self`: every product `N_j K_i`, with `self` acting first.
    pub fn then(&self, next: &KrausChannel) -> Result<Self> {
        if self.dim() != next.dim() {
            return Err(QssError::DimensionMismatch {
                expected: self.dim(),
                actual: next.dim(),
            });
        }
        let ops = next
            .ops
            .iter()
            .flat_map(|n| self.ops.iter().map(move |k| Operator::from_raw(n.matrix() * k.matrix())))
            .collect();
        Self::new(ops)
    }

    pub(crate) fn apply_raw(&self, m: &Mat, targets: &[usize], n: usize) -> Mat {
        let d = m.nrows();
        self.ops.iter().fold(Mat::zeros(d, d), |acc, k| {
            acc + kernel::sandwich(m, k.matrix(), targets, n)
        })
    }
}
