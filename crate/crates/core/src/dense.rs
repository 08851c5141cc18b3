//! Small dense complex matrices for the desk-scale (n <= 6) paths.
//!
//! Computational basis index `k` stores qubit `i` in bit `n - 1 - i`, so qubit
//! 0 is the leftmost Kronecker factor.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const MAX_DENSE_QUBITS: usize = 6;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn check_dense(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        Err(Error::DimensionTooLarge { got: n, max: MAX_DENSE_QUBITS })
    } else {
        Ok(())
    }
}

/// `i^k`.
pub fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// Reorder a qubit mask (bit `i` = qubit `i`) into basis-index bit order.
pub fn qubits_to_index(mask: u32, n: usize) -> u32 {
    (0..n).fold(0, |acc, i| acc | ((mask >> i) & 1) << (n - 1 - i))
}

pub fn index_to_qubits(index: u32, n: usize) -> u32 {
    qubits_to_index(index, n)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// `Tr(a b)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let mut acc = ZERO;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &m.adjoint()) < tol
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn inner(a: &CVector, b: &CVector) -> Complex64 {
    a.dotc(b)
}

/// `|<a|b>|^2` for normalized vectors.
pub fn overlap(a: &CVector, b: &CVector) -> f64 {
    inner(a, b).norm_sqr()
}

pub fn basis_state(dim: usize, index: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[index] = ONE;
    v
}

/// Multiply by a phase so that the first entry with modulus above `1e-9` is
/// real and positive.
pub fn fix_phase(v: &CVector) -> CVector {
    match v.iter().find(|x| x.norm() > 1e-9) {
        Some(&lead) => v * (lead.conj() / lead.norm()),
        None => v.clone(),
    }
}

/// Normalized column of largest norm; recovers the state of a rank-one
/// projector.
pub fn state_of_projector(p: &CMatrix) -> CVector {
    let best = (0..p.ncols())
        .max_by(|&i, &j| p.column(i).norm().total_cmp(&p.column(j).norm()))
        .expect("non-empty matrix");
    let col: CVector = p.column(best).into_owned();
    fix_phase(&(col.clone() / Complex64::from(col.norm())))
}

/// Haar-ish random pure state (normalized complex Gaussian).
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    let v = CVector::from_fn(dim, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let norm = v.norm();
    v / Complex64::from(norm)
}

/// Random full-rank density matrix `G G^dagger / Tr`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let m = &g * g.adjoint();
    let t = trace(&m);
    m / t
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
