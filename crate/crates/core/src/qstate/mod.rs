//! Finite-dimensional quantum state algebra on small qubit registers.
//!
//! Matrices are dense; the largest register the protocol needs is five
//! qubits. Qubit 0 is the most significant bit of a basis index, so
//! `tensor(a, b)` places `a` on the low-numbered (high-order) qubits.
//! Global phases are never tracked: every protocol quantity is computed from
//! density matrices.

mod channel;
mod density;
pub mod gates;
pub(crate) mod kernel;
mod operator;
mod state;

pub use channel::KrausChannel;
pub use density::DensityMatrix;
pub use kernel::{C as Complex, Mat as Matrix};
pub use operator::Operator;
pub use state::StateVector;

use crate::error::{QssError, Result};

/// Measurement basis for a single qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `{|0⟩, |1⟩}`
    Computational,
    /// `{|+⟩, |−⟩}`; outcome 0 is `|+⟩`.
    Hadamard,
}

/// Kronecker product with the left operand on the high-order qubits.
pub trait Tensor: Sized {
    fn tensor(&self, rhs: &Self) -> Self;
}

impl Tensor for Operator {
    fn tensor(&self, rhs: &Self) -> Self {
        Operator::from_raw(self.matrix().kronecker(rhs.matrix()))
    }
}

impl Tensor for StateVector {
    fn tensor(&self, rhs: &Self) -> Self {
        StateVector::from_raw(self.amplitudes().kronecker(rhs.amplitudes()))
    }
}

impl Tensor for DensityMatrix {
    fn tensor(&self, rhs: &Self) -> Self {
        DensityMatrix::from_raw(self.matrix().kronecker(rhs.matrix()))
    }
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

pub(crate) fn check_targets(targets: &[usize], qubits: usize) -> Result<()> {
    if targets.is_empty() {
        return Err(QssError::NoQubits);
    }
    for (k, &q) in targets.iter().enumerate() {
        if q >= qubits {
            return Err(QssError::QubitOutOfRange { qubit: q, qubits });
        }
        if targets[..k].contains(&q) {
            return Err(QssError::DuplicateQubit(q));
        }
    }
    Ok(())
}

fn check_arity(targets: &[usize], op_qubits: usize) -> Result<()> {
    if targets.len() != op_qubits {
        return Err(QssError::DimensionMismatch {
            expected: op_qubits,
            actual: targets.len(),
        });
    }
    Ok(())
}

/// `ρ ↦ U ρ U†` with `u` acting on `targets` (in order).
pub fn apply_unitary(rho: &DensityMatrix, u: &Operator, targets: &[usize]) -> Result<DensityMatrix> {
    if !u.is_unitary() {
        return Err(QssError::NotUnitary(u.unitary_deviation()));
    }
    check_targets(targets, rho.num_qubits())?;
    check_arity(targets, u.num_qubits())?;
    Ok(DensityMatrix::from_raw(kernel::sandwich(
        rho.matrix(),
        u.matrix(),
        targets,
        rho.num_qubits(),
    )))
}

/// `ρ ↦ Σ K ρ K†` with the channel acting on `targets`.
pub fn apply_channel(rho: &DensityMatrix, ch: &KrausChannel, targets: &[usize]) -> Result<DensityMatrix> {
    check_targets(targets, rho.num_qubits())?;
    check_arity(targets, ch.num_qubits())?;
    Ok(DensityMatrix::from_raw(ch.apply_raw(
        rho.matrix(),
        targets,
        rho.num_qubits(),
    )))
}

/// Reduced state on `keep`, in the listed order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    check_targets(keep, rho.num_qubits())?;
    Ok(DensityMatrix::from_raw(kernel::partial_trace(
        rho.matrix(),
        rho.num_qubits(),
        keep,
    )))
}

/// `Tr(P ρ)` for the projector onto `outcome` of `target` in `basis`.
pub fn measure_probability(rho: &DensityMatrix, target: usize, basis: Basis, outcome: bool) -> Result<f64> {
    check_targets(&[target], rho.num_qubits())?;
    let n = rho.num_qubits();
    let rotated;
    let m = match basis {
        Basis::Computational => rho.matrix(),
        Basis::Hadamard => {
            rotated = kernel::sandwich(rho.matrix(), gates::hadamard().matrix(), &[target], n);
            &rotated
        }
    };
    let mask = 1usize << (n - 1 - target);
    let p: f64 = (0..m.nrows())
        .filter(|&i| (i & mask != 0) == outcome)
        .map(|i| m[(i, i)].re)
        .sum();
    Ok(p.clamp(0.0, 1.0))
}

/// Pure-target fidelity `⟨ψ|ρ|ψ⟩`.
pub fn fidelity(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(QssError::DimensionMismatch {
            expected: rho.dim(),
            actual: psi.dim(),
        });
    }
    let v = psi.amplitudes();
    let f = v.dotc(&(rho.matrix() * v));
    Ok(f.re.clamp(0.0, 1.0))
}

/// `U|ψ⟩` with `u` acting on `targets`.
pub fn apply_to_state(psi: &StateVector, u: &Operator, targets: &[usize]) -> Result<StateVector> {
    check_targets(targets, psi.num_qubits())?;
    check_arity(targets, u.num_qubits())?;
    let full = kernel::lift(u.matrix(), targets, psi.num_qubits());
    Ok(StateVector::from_raw(full * psi.amplitudes()))
}

#[cfg(test)]
mod tests {
    use super::gates::*;
    use super::kernel::{C, ONE, ZERO};
    use super::*;
    use crate::tolerance::ALGEBRAIC;
    use nalgebra::{DMatrix, DVector, SymmetricEigen};
    use proptest::prelude::*;

    fn diag(entries: &[f64]) -> DensityMatrix {
        let m = DMatrix::from_diagonal(&DVector::from_iterator(
            entries.len(),
            entries.iter().map(|&x| C::new(x, 0.0)),
        ));
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn tensor_identity_and_kets() {
        assert!(tensor(&identity(), &identity()).approx_eq(&Operator::identity(2), 0.0));
        let ket = tensor(&StateVector::zero(), &StateVector::one());
        assert_eq!(ket.amplitudes()[1], ONE);
        assert_eq!(ket.amplitudes().iter().filter(|z| **z != ZERO).count(), 1);
    }

    #[test]
    fn tensor_x_z_matrix_entries() {
        // hand-written 4x4: X ⊗ Z = [[0,0,1,0],[0,0,0,-1],[1,0,0,0],[0,-1,0,0]]
        let xz = tensor(&pauli_x(), &pauli_z());
        let oracle = Operator::from_real_rows(
            4,
            &[0., 0., 1., 0., 0., 0., 0., -1., 1., 0., 0., 0., 0., -1., 0., 0.],
        )
        .unwrap();
        assert!(xz.approx_eq(&oracle, 0.0));
        let out = apply_to_state(&StateVector::basis(2, 2), &xz, &[0, 1]).unwrap();
        assert_eq!(out.amplitudes()[0], ONE);
        let out = apply_to_state(&StateVector::basis(2, 3), &xz, &[0, 1]).unwrap();
        assert_eq!(out.amplitudes()[1], -ONE);
    }

    #[test]
    fn unitary_actions() {
        let zero = DensityMatrix::basis(1, 0);
        let one = DensityMatrix::basis(1, 1);
        let y = apply_unitary(&zero, &pauli_y(), &[0]).unwrap();
        assert!(y.approx_eq(&one, ALGEBRAIC));
        let h = apply_unitary(&zero, &hadamard(), &[0]).unwrap();
        assert!(h.approx_eq(&DensityMatrix::from_pure(&StateVector::plus()), ALGEBRAIC));
        let chain = [hadamard(), pauli_y(), hadamard()]
            .iter()
            .fold(zero, |r, u| apply_unitary(&r, u, &[0]).unwrap());
        assert!(chain.approx_eq(&one, ALGEBRAIC));
    }

    #[test]
    fn unitary_rejections() {
        let rho = DensityMatrix::basis(2, 0);
        let half_x = pauli_x().scaled(0.5);
        assert!(matches!(apply_unitary(&rho, &half_x, &[0]), Err(QssError::NotUnitary(_))));
        assert!(matches!(
            apply_unitary(&rho, &pauli_x(), &[2]),
            Err(QssError::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            apply_unitary(&rho, &cnot(), &[1, 1]),
            Err(QssError::DuplicateQubit(1))
        ));
        assert!(matches!(
            apply_unitary(&rho, &cnot(), &[0]),
            Err(QssError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn channel_examples() {
        let flip = KrausChannel::new(vec![identity().scaled(0.7f64.sqrt()), pauli_x().scaled(0.3f64.sqrt())]).unwrap();
        let out = apply_channel(&DensityMatrix::basis(1, 0), &flip, &[0]).unwrap();
        assert!(out.approx_eq(&diag(&[0.7, 0.3]), ALGEBRAIC));

        let rho = DensityMatrix::from_pure(&StateVector::from_bloch(1.1, 0.4));
        let same = apply_channel(&rho, &KrausChannel::identity(1), &[0]).unwrap();
        assert!(same.approx_eq(&rho, ALGEBRAIC));

        let decay = KrausChannel::new(vec![
            Operator::from_real_rows(2, &[1., 0., 0., 0.]).unwrap(),
            Operator::from_real_rows(2, &[0., 1., 0., 0.]).unwrap(),
        ])
        .unwrap();
        let out = apply_channel(&DensityMatrix::basis(1, 1), &decay, &[0]).unwrap();
        assert!(out.approx_eq(&DensityMatrix::basis(1, 0), ALGEBRAIC));
    }

    #[test]
    fn channel_construction_errors() {
        assert_eq!(KrausChannel::new(vec![]), Err(QssError::EmptyChannel));
        assert!(matches!(
            KrausChannel::new(vec![pauli_x().scaled(0.5)]),
            Err(QssError::NotTracePreserving(_))
        ));
        assert!(matches!(
            KrausChannel::new(vec![identity(), cnot()]),
            Err(QssError::DimensionMismatch { .. })
        ));
        let rho = DensityMatrix::basis(2, 0);
        let two = KrausChannel::identity(2);
        assert!(matches!(apply_channel(&rho, &two, &[0]), Err(QssError::DimensionMismatch { .. })));
    }

    #[test]
    fn partial_trace_examples() {
        let reduced = partial_trace(&DensityMatrix::basis(2, 0), &[0]).unwrap();
        assert!(reduced.approx_eq(&DensityMatrix::basis(1, 0), ALGEBRAIC));

        let bell = StateVector::normalized(vec![ONE, ZERO, ZERO, ONE]).unwrap();
        let bell = DensityMatrix::from_pure(&bell);
        for keep in [0, 1] {
            let r = partial_trace(&bell, &[keep]).unwrap();
            assert!(r.approx_eq(&DensityMatrix::maximally_mixed(1), ALGEBRAIC));
        }

        // direct sum over the ancilla basis: only ancilla |01⟩ contributes
        let psi = StateVector::from_bloch(0.8, 2.0);
        let joint = DensityMatrix::from_pure(&tensor(&psi, &StateVector::basis(2, 1)));
        let mut oracle = Matrix::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                for anc in 0..4 {
                    oracle[(a, b)] += joint.matrix()[(a * 4 + anc, b * 4 + anc)];
                }
            }
        }
        let r = partial_trace(&joint, &[0]).unwrap();
        assert!(r.approx_eq(&DensityMatrix::new(oracle).unwrap(), ALGEBRAIC));
        assert!(r.approx_eq(&DensityMatrix::from_pure(&psi), ALGEBRAIC));

        assert!(matches!(partial_trace(&joint, &[3]), Err(QssError::QubitOutOfRange { .. })));
        assert!(matches!(partial_trace(&joint, &[]), Err(QssError::NoQubits)));
    }

    #[test]
    fn measurement_examples() {
        let one = DensityMatrix::basis(1, 1);
        assert_eq!(measure_probability(&one, 0, Basis::Computational, true).unwrap(), 1.0);
        let plus = DensityMatrix::from_pure(&StateVector::plus());
        let p = measure_probability(&plus, 0, Basis::Computational, false).unwrap();
        assert!((p - 0.5).abs() < ALGEBRAIC);
        let p = measure_probability(&plus, 0, Basis::Hadamard, false).unwrap();
        assert!((p - 1.0).abs() < ALGEBRAIC);
        let mixed = diag(&[0.7, 0.3]);
        let p = measure_probability(&mixed, 0, Basis::Computational, true).unwrap();
        assert!((p - 0.3).abs() < ALGEBRAIC);
    }

    #[test]
    fn fidelity_examples() {
        let zero = DensityMatrix::basis(1, 0);
        assert_eq!(fidelity(&zero, &StateVector::zero()).unwrap(), 1.0);
        assert_eq!(fidelity(&zero, &StateVector::one()).unwrap(), 0.0);
        let mixed = DensityMatrix::maximally_mixed(1);
        let f = fidelity(&mixed, &StateVector::from_bloch(2.2, 5.0)).unwrap();
        assert!((f - 0.5).abs() < ALGEBRAIC);
        assert!(fidelity(&zero, &StateVector::basis(2, 0)).is_err());
    }

    #[test]
    fn density_validation() {
        let not_unit_trace = Matrix::identity(2, 2);
        assert!(matches!(DensityMatrix::new(not_unit_trace), Err(QssError::InvalidDensity(_))));
        let negative = Matrix::from_diagonal(&DVector::from_vec(vec![C::new(1.5, 0.0), C::new(-0.5, 0.0)]));
        assert!(matches!(DensityMatrix::new(negative), Err(QssError::InvalidDensity(_))));
        let mut skew = Matrix::identity(2, 2).scale(0.5);
        skew[(0, 1)] = C::new(0.1, 0.0);
        assert!(DensityMatrix::new(skew).is_err());
        assert!(StateVector::new(vec![ONE, ONE]).is_err());
        assert!(StateVector::new(vec![ONE, ZERO, ZERO]).is_err());
    }

    fn arb_state(qubits: usize) -> impl Strategy<Value = StateVector> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << qubits)
            .prop_filter_map("zero vector", |v| {
                StateVector::normalized(v.into_iter().map(|(r, i)| C::new(r, i)).collect()).ok()
            })
    }

    /// Mixed state as a convex combination of random pure states.
    fn arb_density(qubits: usize) -> impl Strategy<Value = DensityMatrix> {
        prop::collection::vec((arb_state(qubits), 0.05f64..1.0), 1..4).prop_map(move |parts| {
            let total: f64 = parts.iter().map(|(_, w)| w).sum();
            let m = parts.iter().fold(Matrix::zeros(1 << qubits, 1 << qubits), |acc, (s, w)| {
                acc + DensityMatrix::from_pure(s).matrix().scale(w / total)
            });
            DensityMatrix::new(m).unwrap()
        })
    }

    /// `exp(iH)` for a random Hermitian `H`.
    fn arb_unitary(qubits: usize) -> impl Strategy<Value = Operator> {
        let d = 1usize << qubits;
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |v| {
            let a = Matrix::from_iterator(d, d, v.into_iter().map(|(r, i)| C::new(r, i)));
            let h = (&a + a.adjoint()).scale(0.5);
            let eig = SymmetricEigen::new(h);
            let phases = Matrix::from_diagonal(&eig.eigenvalues.map(|x| C::from_polar(1.0, x)));
            Operator::unitary(&eig.eigenvectors * phases * eig.eigenvectors.adjoint()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn channel_preserves_trace_and_hermiticity(rho in arb_density(3), p in 0.0f64..1.0, q in 0usize..3) {
            let ch = KrausChannel::new(vec![identity().scaled((1.0 - p).sqrt()), pauli_y().scaled(p.sqrt())]).unwrap();
            let out = apply_channel(&rho, &ch, &[q]).unwrap();
            prop_assert!((out.trace() - 1.0).abs() < ALGEBRAIC);
            prop_assert_eq!(kernel::hermitian_deviation(out.matrix()), 0.0);
        }

        #[test]
        fn unitary_preserves_purity(rho in arb_density(2), u in arb_unitary(2)) {
            let out = apply_unitary(&rho, &u, &[1, 0]).unwrap();
            prop_assert!((out.purity() - rho.purity()).abs() < ALGEBRAIC);
        }

        #[test]
        fn partial_trace_undoes_pure_ancilla(rho in arb_density(1), anc in 0usize..4) {
            let joint = tensor(&rho, &DensityMatrix::basis(2, anc));
            let back = partial_trace(&joint, &[0]).unwrap();
            prop_assert!(back.approx_eq(&rho, ALGEBRAIC));
        }

        #[test]
        fn outcome_probabilities_sum_to_one(rho in arb_density(3), q in 0usize..3, hadamard_basis: bool) {
            let basis = if hadamard_basis { Basis::Hadamard } else { Basis::Computational };
            let p0 = measure_probability(&rho, q, basis, false).unwrap();
            let p1 = measure_probability(&rho, q, basis, true).unwrap();
            prop_assert!((p0 + p1 - 1.0).abs() < ALGEBRAIC);
        }
    }
}
