use std::fmt;

use serde::Serialize;

use crate::qstate::{gates, Basis, Operator, StateVector};

/// Operation an intermediate receiver applies to each qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PartyOp {
    Identity,
    /// The real form `|0⟩⟨1| − |1⟩⟨0|`.
    PauliY,
    Hadamard,
}

impl PartyOp {
    pub const ALL: [PartyOp; 3] = [PartyOp::Identity, PartyOp::PauliY, PartyOp::Hadamard];

    pub fn operator(self) -> Operator {
        match self {
            PartyOp::Identity => gates::identity(),
            PartyOp::PauliY => gates::real_sigma_y(),
            PartyOp::Hadamard => gates::hadamard(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PartyOp::Identity => "I",
            PartyOp::PauliY => "sigma_y",
            PartyOp::Hadamard => "H",
        }
    }
}

/// The preparer's initial single-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Preparation {
    Zero,
    One,
    Plus,
    Minus,
}

impl Preparation {
    pub const ALL: [Preparation; 4] = [
        Preparation::Zero,
        Preparation::One,
        Preparation::Plus,
        Preparation::Minus,
    ];

    pub fn basis(self) -> Basis {
        match self {
            Preparation::Zero | Preparation::One => Basis::Computational,
            Preparation::Plus | Preparation::Minus => Basis::Hadamard,
        }
    }

    /// A unitary `U` with `U|0⟩` equal to the prepared state up to sign.
    pub fn unitary(self) -> Operator {
        match self {
            Preparation::Zero => gates::identity(),
            Preparation::One => gates::real_sigma_y(),
            Preparation::Plus => gates::hadamard(),
            Preparation::Minus => gates::hadamard()
                .compose(&gates::real_sigma_y())
                .expect("2x2 product"),
        }
    }

    pub fn state(self) -> StateVector {
        match self {
            Preparation::Zero => StateVector::zero(),
            Preparation::One => StateVector::one(),
            Preparation::Plus => StateVector::plus(),
            Preparation::Minus => StateVector::minus(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Preparation::Zero => "0",
            Preparation::One => "1",
            Preparation::Plus => "+",
            Preparation::Minus => "-",
        }
    }
}

/// The sender's classical secret; encoded as `I` for 0 and `σ_y` for 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SecretBit(bool);

impl SecretBit {
    pub const ZERO: SecretBit = SecretBit(false);
    pub const ONE: SecretBit = SecretBit(true);
    pub const ALL: [SecretBit; 2] = [SecretBit::ZERO, SecretBit::ONE];

    pub fn new(bit: bool) -> Self {
        Self(bit)
    }

    pub fn bit(self) -> bool {
        self.0
    }

    pub fn value(self) -> u8 {
        u8::from(self.0)
    }

    pub fn alice_op(self) -> PartyOp {
        if self.0 {
            PartyOp::PauliY
        } else {
            PartyOp::Identity
        }
    }
}

/// One joint assignment of every party's random choice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChoiceTuple {
    pub prep: Preparation,
    pub intermediate_ops: Vec<PartyOp>,
    pub secret: SecretBit,
}

impl ChoiceTuple {
    pub fn new(prep: Preparation, intermediate_ops: Vec<PartyOp>, secret: SecretBit) -> Self {
        Self {
            prep,
            intermediate_ops,
            secret,
        }
    }

    /// Number of tuples for `parties` participants: `4 · 3^(n−2) · 2`.
    pub fn count(parties: usize) -> usize {
        8 * 3usize.pow((parties - 2) as u32)
    }

    /// All tuples for `parties` participants, preparation outermost and
    /// secret innermost, operations in lexicographic order.
    pub fn enumerate(parties: usize) -> impl Iterator<Item = ChoiceTuple> {
        let mids = parties - 2;
        let per_prep = 3usize.pow(mids as u32);
        Preparation::ALL.into_iter().flat_map(move |prep| {
            (0..per_prep).flat_map(move |code| {
                let ops: Vec<PartyOp> = (0..mids)
                    .map(|k| PartyOp::ALL[(code / 3usize.pow((mids - 1 - k) as u32)) % 3])
                    .collect();
                SecretBit::ALL
                    .into_iter()
                    .map(move |secret| ChoiceTuple::new(prep, ops.clone(), secret))
            })
        })
    }
}

impl fmt::Display for ChoiceTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ops: Vec<&str> = self.intermediate_ops.iter().map(|o| o.label()).collect();
        write!(f, "{}|{}|{}", self.prep.label(), ops.join(","), self.secret.value())
    }
}
