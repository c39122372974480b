//! Encoder/recovery pair reduced to a one-qubit-in, one-qubit-out form.
//!
//! Recovery followed by decoding and tracing out the ancillas is a channel
//! from the physical register to the data qubit. Its Kraus operators are the
//! `2 × d` row slices of `M_j` (recovery composed with the inverse encoder)
//! taken at a fixed ancilla pattern. Precomputing them lets the protocol
//! decode without building `d × d` intermediates.

use nalgebra::DVector;
use rand::Rng;

use crate::noise::sample_index;
use crate::qstate::kernel::{Mat, TargetMap, C};

/// Below this Frobenius norm a sliced Kraus operator is dropped.
const NEGLIGIBLE: f64 = 1e-14;

#[derive(Clone, Debug)]
pub(crate) struct Decoder {
    qubits: usize,
    encoder: Mat,
    kraus: Vec<Mat>,
}

impl Decoder {
    /// `enc` is the full encoding unitary with the data on qubit `data`
    /// and ancillas starting in `|0…0⟩`; `maps` are the operators applied
    /// to the received register, each ending in the decoded frame.
    pub(crate) fn new(enc: &Mat, data: usize, qubits: usize, maps: impl IntoIterator<Item = Mat>) -> Self {
        let data_map = TargetMap::new(&[data], qubits);
        let ancillas: Vec<usize> = (0..qubits).filter(|&q| q != data).collect();
        let anc_map = TargetMap::new(&ancillas, qubits);
        let row = |anc: usize, b: usize| data_map.with_sub(anc_map.with_sub(0, anc), b);
        let d = 1usize << qubits;

        let encoder = Mat::from_fn(d, 2, |i, b| enc[(i, row(0, b))]);
        let mut kraus = Vec::new();
        for m in maps {
            for anc in 0..1usize << ancillas.len() {
                let slice = Mat::from_fn(2, d, |b, j| m[(row(anc, b), j)]);
                if slice.norm() > NEGLIGIBLE {
                    kraus.push(slice);
                }
            }
        }
        Self {
            qubits,
            encoder,
            kraus,
        }
    }

    pub(crate) fn qubits(&self) -> usize {
        self.qubits
    }

    pub(crate) fn encode_raw(&self, m: &Mat) -> Mat {
        &self.encoder * m * self.encoder.adjoint()
    }

    pub(crate) fn encode_vec(&self, v: &DVector<C>) -> DVector<C> {
        &self.encoder * v
    }

    pub(crate) fn decode_raw(&self, m: &Mat) -> Mat {
        let mut out = Mat::zeros(2, 2);
        for k in &self.kraus {
            out += k * m * k.adjoint();
        }
        out
    }

    /// Samples one recovery outcome for a pure register state and returns
    /// the normalized data-qubit state.
    pub(crate) fn decode_sample<R: Rng + ?Sized>(&self, v: &DVector<C>, rng: &mut R) -> DVector<C> {
        let outs: Vec<DVector<C>> = self.kraus.iter().map(|k| k * v).collect();
        let weights: Vec<f64> = outs.iter().map(|o| o.norm_squared()).collect();
        let pick = sample_index(&weights, rng.random::<f64>());
        let norm = weights[pick].sqrt();
        outs[pick].unscale(norm)
    }

    /// `Σ K†K` over the sliced operators, which must be the identity.
    #[cfg(test)]
    pub(crate) fn completeness(&self) -> Mat {
        let d = 1usize << self.qubits;
        let mut acc = Mat::zeros(d, d);
        for k in &self.kraus {
            acc += k.adjoint() * k;
        }
        acc
    }
}
