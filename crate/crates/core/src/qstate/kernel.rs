//! Index-level kernels on raw register matrices.
//!
//! Everything here works on plain `DMatrix<Complex64>` values so that the
//! validated wrappers can share it, and so that linear maps can be probed
//! with non-physical inputs (matrix units) when building superoperators.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C = Complex64;
pub type Mat = DMatrix<C>;

pub(crate) const ZERO: C = C::new(0.0, 0.0);
pub(crate) const ONE: C = C::new(1.0, 0.0);

/// Number of qubits for a power-of-two dimension `>= 2`.
pub(crate) fn qubits_of(dim: usize) -> Option<usize> {
    (dim >= 2 && dim.is_power_of_two()).then(|| dim.trailing_zeros() as usize)
}

/// Positions of a set of target qubits inside an `n`-qubit basis index.
///
/// The first target is the most significant bit of the sub-index, matching
/// the tensor-product ordering used everywhere else.
pub(crate) struct TargetMap {
    masks: Vec<usize>,
    full_mask: usize,
}

impl TargetMap {
    pub(crate) fn new(targets: &[usize], n: usize) -> Self {
        let masks: Vec<usize> = targets.iter().map(|&q| 1usize << (n - 1 - q)).collect();
        let full_mask = masks.iter().fold(0, |acc, m| acc | m);
        Self { masks, full_mask }
    }

    #[inline]
    pub(crate) fn sub(&self, index: usize) -> usize {
        self.masks
            .iter()
            .fold(0, |acc, &m| (acc << 1) | usize::from(index & m != 0))
    }

    #[inline]
    pub(crate) fn with_sub(&self, index: usize, sub: usize) -> usize {
        let t = self.masks.len();
        let mut out = index & !self.full_mask;
        for (k, &m) in self.masks.iter().enumerate() {
            if (sub >> (t - 1 - k)) & 1 == 1 {
                out |= m;
            }
        }
        out
    }
}

/// `U m U†` with `u` acting on `targets` of an `n`-qubit register.
pub(crate) fn sandwich(m: &Mat, u: &Mat, targets: &[usize], n: usize) -> Mat {
    let d = m.nrows();
    let s = u.nrows();
    if s == d && targets.iter().enumerate().all(|(k, &q)| k == q) {
        return u * m * u.adjoint();
    }
    let map = TargetMap::new(targets, n);
    let subs: Vec<usize> = (0..d).map(|i| map.sub(i)).collect();
    let swapped: Vec<usize> = (0..d)
        .flat_map(|i| (0..s).map(move |a| (i, a)))
        .map(|(i, a)| map.with_sub(i, a))
        .collect();

    let mut left = Mat::zeros(d, d);
    for i in 0..d {
        for a in 0..s {
            let coeff = u[(subs[i], a)];
            if coeff == ZERO {
                continue;
            }
            let row = swapped[i * s + a];
            for j in 0..d {
                left[(i, j)] += coeff * m[(row, j)];
            }
        }
    }
    let mut out = Mat::zeros(d, d);
    for j in 0..d {
        for b in 0..s {
            let coeff = u[(subs[j], b)].conj();
            if coeff == ZERO {
                continue;
            }
            let col = swapped[j * s + b];
            for i in 0..d {
                out[(i, j)] += left[(i, col)] * coeff;
            }
        }
    }
    out
}

/// `u` lifted to the full register (identity on non-target qubits).
pub(crate) fn lift(u: &Mat, targets: &[usize], n: usize) -> Mat {
    let d = 1usize << n;
    let map = TargetMap::new(targets, n);
    Mat::from_fn(d, d, |i, j| {
        if i & !map.full_mask == j & !map.full_mask {
            u[(map.sub(i), map.sub(j))]
        } else {
            ZERO
        }
    })
}

/// Reduced matrix on `keep` (in the listed order), tracing out the rest.
pub(crate) fn partial_trace(m: &Mat, n: usize, keep: &[usize]) -> Mat {
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let kmap = TargetMap::new(keep, n);
    let tmap = TargetMap::new(&traced, n);
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();
    let rest: Vec<usize> = (0..dt).map(|r| tmap.with_sub(0, r)).collect();
    Mat::from_fn(dk, dk, |a, b| {
        rest.iter()
            .map(|&r| m[(kmap.with_sub(r, a), kmap.with_sub(r, b))])
            .sum()
    })
}

/// Largest absolute entry of `m - m†`.
pub(crate) fn hermitian_deviation(m: &Mat) -> f64 {
    let d = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in i..d {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(m + m†) / 2`.
pub(crate) fn symmetrize(m: Mat) -> Mat {
    let adj = m.adjoint();
    (m + adj).scale(0.5)
}

pub(crate) fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub(crate) fn identity_deviation(m: &Mat) -> f64 {
    max_abs_diff(m, &Mat::identity(m.nrows(), m.ncols()))
}

pub(crate) fn all_finite(m: &Mat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Matrix unit `|i⟩⟨j|` of dimension `d`.
pub(crate) fn unit(d: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(d, d);
    m[(i, j)] = ONE;
    m
}
