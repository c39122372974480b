//! Protocol evolution shared by exact enumeration and Monte Carlo sampling.
//!
//! A tuple is always driven in the same order: preparation, hop 0, then for
//! each intermediate party its operation and the next hop, the sender's
//! operation and the final hop, and finally the receivers' inverse
//! operations in reverse order. What a "hop" and a "gate" mean depends on
//! the carrier: a single-qubit density matrix with a per-hop superoperator,
//! a codeword register under i.i.d. noise, or a sampled pure state.

use nalgebra::DVector;
use rand::Rng;

use super::config::{ProtocolConfig, QecMode, QecScheme};
use super::types::{PartyOp, Preparation, SecretBit};
use crate::error::Result;
use crate::noise::{lift_iid, IidNoise, NoiseSpec};
use crate::qec::{five_decoder, five_logical_covariant, four_decoder, four_logical_covariant, Decoder};
use crate::qstate::kernel::{self, Mat, C, ONE, ZERO};
use crate::qstate::{KrausChannel, Operator};

/// Row-major single-qubit matrix.
pub(crate) type G2 = [[C; 2]; 2];

fn g2(m: &Mat) -> G2 {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

fn kraus_g2(ch: &KrausChannel) -> Vec<G2> {
    ch.operators().iter().map(|k| g2(k.matrix())).collect()
}

/// Party unitaries and their inverses, indexed by enum discriminant.
pub(crate) struct Gates<G> {
    prep: [G; 4],
    prep_adj: [G; 4],
    party: [G; 3],
    party_adj: [G; 3],
}

impl Gates<Mat> {
    fn build(lift: impl Fn(&Operator) -> Result<Operator>) -> Result<Self> {
        let prep = Preparation::ALL.map(|p| lift(&p.unitary()));
        let party = PartyOp::ALL.map(|o| lift(&o.operator()));
        let unwrap4 = |a: [Result<Operator>; 4]| -> Result<[Mat; 4]> {
            let [a, b, c, d] = a;
            Ok([a?, b?, c?, d?].map(|o| o.matrix().clone()))
        };
        let [x, y, z] = party;
        let party = [x?, y?, z?].map(|o| o.matrix().clone());
        let prep = unwrap4(prep)?;
        Ok(Self {
            prep_adj: prep.clone().map(|m| m.adjoint()),
            party_adj: party.clone().map(|m| m.adjoint()),
            prep,
            party,
        })
    }

    fn physical() -> Self {
        Self::build(|u| Ok(u.clone())).expect("single-qubit gates")
    }

    fn to_g2(&self) -> Gates<G2> {
        Gates {
            prep: self.prep.clone().map(|m| g2(&m)),
            prep_adj: self.prep_adj.clone().map(|m| g2(&m)),
            party: self.party.clone().map(|m| g2(&m)),
            party_adj: self.party_adj.clone().map(|m| g2(&m)),
        }
    }
}

pub(crate) trait Carrier {
    type Gate;
    fn apply(&mut self, gate: &Self::Gate);
    fn hop(&mut self, index: usize);
}

pub(crate) fn drive<K: Carrier>(
    carrier: &mut K,
    gates: &Gates<K::Gate>,
    prep: Preparation,
    ops: &[PartyOp],
    secret: SecretBit,
) {
    carrier.apply(&gates.prep[prep as usize]);
    carrier.hop(0);
    for (i, &op) in ops.iter().enumerate() {
        carrier.apply(&gates.party[op as usize]);
        carrier.hop(i + 1);
    }
    carrier.apply(&gates.party[secret.alice_op() as usize]);
    carrier.hop(ops.len() + 1);
    for &op in ops.iter().rev() {
        carrier.apply(&gates.party_adj[op as usize]);
    }
    carrier.apply(&gates.prep_adj[prep as usize]);
}

/// Matrix of a linear map on 2×2 matrices acting on column-major `vec(ρ)`.
fn superoperator(f: impl Fn(&Mat) -> Mat) -> Mat {
    let mut s = Mat::zeros(4, 4);
    for col in 0..4 {
        let out = f(&kernel::unit(2, col % 2, col / 2));
        for row in 0..4 {
            s[(row, col)] = out[(row % 2, row / 2)];
        }
    }
    s
}

fn apply_superoperator(s: &Mat, m: &Mat) -> Mat {
    let v = s * DVector::from_column_slice(m.as_slice());
    Mat::from_column_slice(2, 2, v.as_slice())
}

fn qubit_decoder(scheme: QecScheme, spec: &NoiseSpec) -> Result<Option<Decoder>> {
    Ok(match scheme {
        QecScheme::FiveQubit => Some(five_decoder().clone()),
        QecScheme::FourQubit => Some(four_decoder(spec.gamma())?),
        QecScheme::None | QecScheme::Repetition => None,
    })
}

/// One hop seen from the data qubit: plain noise, or encode, noise on every
/// physical qubit, recover and decode.
fn hop_superoperator(scheme: QecScheme, spec: &NoiseSpec) -> Result<Mat> {
    let ch = spec.channel()?;
    Ok(match qubit_decoder(scheme, spec)? {
        None => superoperator(|e| ch.apply_raw(e, &[0], 1)),
        Some(dec) => {
            let noise = lift_iid(&ch, dec.qubits())?;
            superoperator(|e| dec.decode_raw(&noise.apply_raw(dec.encode_raw(e))))
        }
    })
}

fn is_single_cycle_code(cfg: &ProtocolConfig) -> bool {
    matches!(cfg.qec.scheme, QecScheme::FiveQubit | QecScheme::FourQubit)
        && cfg.qec.mode == QecMode::SingleCycle
}

/// Damping strength the single-cycle four-qubit recovery is tuned for: the
/// composition of every hop's damping, `1 − Π(1 − γ_h)`.
pub(crate) fn effective_gamma(cfg: &ProtocolConfig) -> f64 {
    1.0 - cfg.hops.hops().iter().map(|h| 1.0 - h.gamma()).product::<f64>()
}

fn single_cycle_parts(cfg: &ProtocolConfig) -> Result<(Gates<Mat>, Decoder)> {
    match cfg.qec.scheme {
        QecScheme::FiveQubit => Ok((Gates::build(five_logical_covariant)?, five_decoder().clone())),
        _ => Ok((Gates::build(four_logical_covariant)?, four_decoder(effective_gamma(cfg))?)),
    }
}

struct QubitExact<'a> {
    m: Mat,
    hops: &'a [Mat],
}

impl Carrier for QubitExact<'_> {
    type Gate = Mat;
    fn apply(&mut self, u: &Mat) {
        self.m = u * &self.m * u.adjoint();
    }
    fn hop(&mut self, index: usize) {
        self.m = apply_superoperator(&self.hops[index], &self.m);
    }
}

struct RegisterExact<'a> {
    m: Mat,
    hops: &'a [IidNoise],
}

impl Carrier for RegisterExact<'_> {
    type Gate = Mat;
    fn apply(&mut self, u: &Mat) {
        self.m = u * &self.m * u.adjoint();
    }
    fn hop(&mut self, index: usize) {
        let m = std::mem::replace(&mut self.m, Mat::zeros(0, 0));
        self.m = self.hops[index].apply_raw(m);
    }
}

/// Exact wrong-bit probability of individual tuples.
pub(crate) enum ExactEngine {
    Qubit {
        gates: Gates<Mat>,
        hops: Vec<Mat>,
    },
    Register {
        gates: Gates<Mat>,
        hops: Vec<IidNoise>,
        decoder: Decoder,
        start: Mat,
    },
}

impl ExactEngine {
    pub(crate) fn new(cfg: &ProtocolConfig) -> Result<Self> {
        if is_single_cycle_code(cfg) {
            let (gates, decoder) = single_cycle_parts(cfg)?;
            let hops = cfg
                .hops
                .hops()
                .iter()
                .map(|h| lift_iid(&h.channel()?, decoder.qubits()))
                .collect::<Result<Vec<_>>>()?;
            let start = decoder.encode_raw(&kernel::unit(2, 0, 0));
            return Ok(Self::Register {
                gates,
                hops,
                decoder,
                start,
            });
        }
        let hops = cfg
            .hops
            .hops()
            .iter()
            .map(|h| hop_superoperator(cfg.qec.scheme, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::Qubit {
            gates: Gates::physical(),
            hops,
        })
    }

    /// Wrong-bit probability of one protocol copy (before any majority vote).
    pub(crate) fn tuple_error(&self, prep: Preparation, ops: &[PartyOp], secret: SecretBit) -> f64 {
        let out = match self {
            Self::Qubit { gates, hops } => {
                let mut c = QubitExact {
                    m: kernel::unit(2, 0, 0),
                    hops,
                };
                drive(&mut c, gates, prep, ops, secret);
                c.m
            }
            Self::Register {
                gates,
                hops,
                decoder,
                start,
            } => {
                let mut c = RegisterExact {
                    m: start.clone(),
                    hops,
                };
                drive(&mut c, gates, prep, ops, secret);
                decoder.decode_raw(&c.m)
            }
        };
        let s = usize::from(secret.bit());
        let right = out[(s, s)].re / (out[(0, 0)].re + out[(1, 1)].re);
        (1.0 - right).clamp(0.0, 1.0)
    }
}

/// Samples one Kraus branch of a single-qubit channel on qubit `q` of a
/// normalized pure state and renormalizes.
fn sample_branch<R: Rng + ?Sized>(v: &mut [C], ops: &[G2], q: usize, n: usize, rng: &mut R) {
    let mask = 1usize << (n - 1 - q);
    let weight = |k: &G2| -> f64 {
        let mut w = 0.0;
        for i in (0..v.len()).filter(|i| i & mask == 0) {
            let (a, b) = (v[i], v[i | mask]);
            w += (k[0][0] * a + k[0][1] * b).norm_sqr() + (k[1][0] * a + k[1][1] * b).norm_sqr();
        }
        w
    };
    let u = rng.random::<f64>();
    let mut acc = 0.0;
    let mut pick = None;
    let mut last = None;
    for (idx, k) in ops.iter().enumerate() {
        let w = weight(k);
        if w <= 0.0 {
            continue;
        }
        last = Some((idx, w));
        acc += w;
        if u < acc {
            pick = Some((idx, w));
            break;
        }
    }
    let (idx, w) = pick.or(last).expect("a trace-preserving channel has a branch");
    let k = &ops[idx];
    let scale = 1.0 / w.sqrt();
    for i in (0..v.len()).filter(|i| i & mask == 0) {
        let (a, b) = (v[i], v[i | mask]);
        v[i] = (k[0][0] * a + k[0][1] * b) * scale;
        v[i | mask] = (k[1][0] * a + k[1][1] * b) * scale;
    }
}

/// A hop as sampled in Monte Carlo mode on the data qubit.
pub(crate) enum QubitHop {
    Plain(Vec<G2>),
    Coded { decoder: Decoder, noise: Vec<G2> },
}

struct QubitMc<'a, R: ?Sized> {
    v: [C; 2],
    hops: &'a [QubitHop],
    rng: &'a mut R,
}

impl<R: Rng + ?Sized> Carrier for QubitMc<'_, R> {
    type Gate = G2;
    fn apply(&mut self, u: &G2) {
        let [a, b] = self.v;
        self.v = [u[0][0] * a + u[0][1] * b, u[1][0] * a + u[1][1] * b];
    }
    fn hop(&mut self, index: usize) {
        match &self.hops[index] {
            QubitHop::Plain(ops) => sample_branch(&mut self.v, ops, 0, 1, self.rng),
            QubitHop::Coded { decoder, noise } => {
                let n = decoder.qubits();
                let mut reg = decoder.encode_vec(&DVector::from_column_slice(&self.v));
                for q in 0..n {
                    sample_branch(reg.as_mut_slice(), noise, q, n, self.rng);
                }
                let out = decoder.decode_sample(&reg, self.rng);
                self.v = [out[0], out[1]];
            }
        }
    }
}

struct RegisterMc<'a, R: ?Sized> {
    v: DVector<C>,
    qubits: usize,
    hops: &'a [Vec<G2>],
    rng: &'a mut R,
}

impl<R: Rng + ?Sized> Carrier for RegisterMc<'_, R> {
    type Gate = Mat;
    fn apply(&mut self, u: &Mat) {
        self.v = u * &self.v;
    }
    fn hop(&mut self, index: usize) {
        for q in 0..self.qubits {
            sample_branch(self.v.as_mut_slice(), &self.hops[index], q, self.qubits, self.rng);
        }
    }
}

/// Whether a measurement of `v` in the computational basis misses `secret`.
fn measure_wrong<R: Rng + ?Sized>(v: [C; 2], secret: SecretBit, rng: &mut R) -> bool {
    let p0 = v[0].norm_sqr();
    let p1 = v[1].norm_sqr();
    let wrong = if secret.bit() { p0 } else { p1 } / (p0 + p1);
    rng.random::<f64>() < wrong
}

/// Per-trial sampler.
// one instance per run, so the inline 2x2 gates are not worth boxing
#[allow(clippy::large_enum_variant)]
pub(crate) enum McEngine {
    Qubit {
        gates: Gates<G2>,
        hops: Vec<QubitHop>,
        copies: usize,
    },
    Register {
        gates: Gates<Mat>,
        hops: Vec<Vec<G2>>,
        decoder: Decoder,
        start: DVector<C>,
    },
}

impl McEngine {
    pub(crate) fn new(cfg: &ProtocolConfig) -> Result<Self> {
        let channels = cfg
            .hops
            .hops()
            .iter()
            .map(|h| h.channel())
            .collect::<Result<Vec<_>>>()?;
        if is_single_cycle_code(cfg) {
            let (gates, decoder) = single_cycle_parts(cfg)?;
            let start = decoder.encode_vec(&DVector::from_column_slice(&[ONE, ZERO]));
            return Ok(Self::Register {
                gates,
                hops: channels.iter().map(kraus_g2).collect(),
                decoder,
                start,
            });
        }
        let hops = cfg
            .hops
            .hops()
            .iter()
            .zip(&channels)
            .map(|(spec, ch)| {
                Ok(match qubit_decoder(cfg.qec.scheme, spec)? {
                    None => QubitHop::Plain(kraus_g2(ch)),
                    Some(decoder) => QubitHop::Coded {
                        decoder,
                        noise: kraus_g2(ch),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let copies = if cfg.qec.scheme == QecScheme::Repetition { 3 } else { 1 };
        Ok(Self::Qubit {
            gates: Gates::physical().to_g2(),
            hops,
            copies,
        })
    }

    /// One trial: draws the tuple, then samples every copy's noise and
    /// measurement in order. Returns whether the decided bit is wrong.
    pub(crate) fn trial<R: Rng + ?Sized>(&self, rng: &mut R, parties: usize, ops: &mut Vec<PartyOp>) -> bool {
        let prep = Preparation::ALL[rng.random_range(0..4)];
        ops.clear();
        for _ in 0..parties - 2 {
            ops.push(PartyOp::ALL[rng.random_range(0..3)]);
        }
        let secret = SecretBit::new(rng.random_range(0..2) == 1);
        match self {
            Self::Qubit { gates, hops, copies } => {
                let mut wrong = 0;
                for _ in 0..*copies {
                    let mut c = QubitMc {
                        v: [ONE, ZERO],
                        hops,
                        rng: &mut *rng,
                    };
                    drive(&mut c, gates, prep, ops, secret);
                    let v = c.v;
                    wrong += usize::from(measure_wrong(v, secret, rng));
                }
                2 * wrong > *copies
            }
            Self::Register {
                gates,
                hops,
                decoder,
                start,
            } => {
                let mut c = RegisterMc {
                    v: start.clone(),
                    qubits: decoder.qubits(),
                    hops,
                    rng: &mut *rng,
                };
                drive(&mut c, gates, prep, ops, secret);
                let v = c.v;
                let out = decoder.decode_sample(&v, rng);
                measure_wrong([out[0], out[1]], secret, rng)
            }
        }
    }
}
