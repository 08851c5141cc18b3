//! Translation operators `i^s X^a Z^b` with exact Z4 phase tracking.
//!
//! `X^a = X^{a_0} (x) ... (x) X^{a_{n-1}}` with qubit 0 leftmost. The canonical
//! translation for a point has `s = |a & b| mod 4`, which turns every qubit
//! factor into one of `I, X, Y, Z`. Products keep the full exponent so the
//! symbolic phase always matches the matrix product.

use std::fmt;
use std::str::FromStr;

use crate::dense::{self, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::gf2;
use crate::phasespace::{BinaryPoint, Line, StriationLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliTranslation {
    n: usize,
    x: u32,
    z: u32,
    /// Full exponent of `i` in front of `X^x Z^z`.
    s: u8,
}

impl PauliTranslation {
    pub fn identity(n: usize) -> Self {
        PauliTranslation { n, x: 0, z: 0, s: 0 }
    }

    /// The hermitian translation `i^{a.b} X^a Z^b`.
    pub fn new(n: usize, a: u32, b: u32) -> Self {
        let mask = gf2::low_mask(n);
        assert!(a & !mask == 0 && b & !mask == 0, "bits beyond {n} qubits");
        PauliTranslation { n, x: a, z: b, s: ((a & b).count_ones() % 4) as u8 }
    }

    /// `i^s X^a Z^b` with an explicit exponent.
    pub fn with_phase(n: usize, a: u32, b: u32, s: u8) -> Self {
        let mut t = Self::new(n, a, b);
        t.s = s % 4;
        t
    }

    pub fn from_point(n: usize, point: BinaryPoint) -> Self {
        Self::new(n, point.qbits, point.pbits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u32 {
        self.x
    }

    pub fn z_bits(&self) -> u32 {
        self.z
    }

    pub fn point(&self) -> BinaryPoint {
        BinaryPoint::new(self.x, self.z)
    }

    /// Exponent `s` of `i^s X^a Z^b`.
    pub fn phase_exponent(&self) -> u8 {
        self.s
    }

    /// Extra `i^k` relative to the canonical translation of the same point.
    pub fn leftover_phase(&self) -> u8 {
        (self.s + 4 - ((self.x & self.z).count_ones() % 4) as u8) % 4
    }

    pub fn is_canonical(&self) -> bool {
        self.leftover_phase() == 0
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Same point, leftover phase dropped.
    pub fn canonical(&self) -> Self {
        Self::new(self.n, self.x, self.z)
    }

    /// Multiply by `i^k`.
    pub fn times_i_pow(&self, k: u8) -> Self {
        PauliTranslation { s: (self.s + k) % 4, ..*self }
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// `self * other` as operators (`self` applied last).
    pub fn compose(&self, other: &PauliTranslation) -> Result<PauliTranslation> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        // Z^b1 X^a2 = (-1)^{b1.a2} X^a2 Z^b1
        let swap = 2 * ((self.z & other.x).count_ones() % 2) as u8;
        Ok(PauliTranslation {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            s: (self.s + other.s + swap) % 4,
        })
    }

    pub fn commutes(&self, other: &PauliTranslation) -> bool {
        debug_assert_eq!(self.n, other.n);
        gf2::dot(self.z, other.x) ^ gf2::dot(self.x, other.z) == 0
    }

    /// Dense matrix; `n <= 6`.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        dense::check_dense(self.n)?;
        let dim = 1usize << self.n;
        let xa = dense::qubits_to_index(self.x, self.n) as usize;
        let zb = dense::qubits_to_index(self.z, self.n);
        let mut m = CMatrix::zeros(dim, dim);
        for k in 0..dim {
            let sign = 2 * ((zb & k as u32).count_ones() % 2) as u8;
            m[(k ^ xa, k)] = dense::i_pow(self.s + sign);
        }
        Ok(m)
    }

    /// Action on a state vector of dimension `2^n`.
    pub fn apply(&self, v: &CVector) -> CVector {
        let dim = v.len();
        assert_eq!(dim, 1 << self.n);
        let xa = dense::qubits_to_index(self.x, self.n) as usize;
        let zb = dense::qubits_to_index(self.z, self.n);
        let mut out = CVector::zeros(dim);
        for k in 0..dim {
            let sign = 2 * ((zb & k as u32).count_ones() % 2) as u8;
            out[k ^ xa] = v[k] * dense::i_pow(self.s + sign);
        }
        out
    }

    /// `T M T^dagger` using the monomial structure of `T`.
    pub fn conjugate_matrix(&self, m: &CMatrix) -> CMatrix {
        let dim = m.nrows();
        assert_eq!(dim, 1 << self.n);
        let xa = dense::qubits_to_index(self.x, self.n) as usize;
        let zb = dense::qubits_to_index(self.z, self.n);
        // T|k> = phi(k) |k ^ xa|, so (T M T+)_{r,c} = phi(r^xa) conj(phi(c^xa)) M_{r^xa, c^xa}
        let sign = |k: usize| if (zb & k as u32).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        CMatrix::from_fn(dim, dim, |r, c| {
            let (rr, cc) = (r ^ xa, c ^ xa);
            m[(rr, cc)] * (sign(rr) * sign(cc))
        })
    }

    /// `G T G^dagger` for a Clifford gate `G`.
    pub fn conjugate_by(&self, gate: &Gate) -> PauliTranslation {
        let bit = |v: u32, i: usize| (v >> i) & 1;
        let mut out = *self;
        match *gate {
            Gate::Cnot { control, target } => {
                out.x ^= bit(self.x, control) << target;
                out.z ^= bit(self.z, target) << control;
            }
            Gate::Swap(i, j) => {
                for v in [&mut out.x, &mut out.z] {
                    let (bi, bj) = (bit(*v, i), bit(*v, j));
                    *v = (*v & !(1 << i) & !(1 << j)) | bj << i | bi << j;
                }
            }
            Gate::H(q) => {
                let (a, b) = (bit(self.x, q), bit(self.z, q));
                out.x = (self.x & !(1 << q)) | b << q;
                out.z = (self.z & !(1 << q)) | a << q;
                out.s = (self.s + 2 * (a & b) as u8) % 4;
            }
        }
        out
    }

    /// `U T U^dagger` for the circuit `U` given in application order.
    pub fn conjugate_by_circuit(&self, gates: &[Gate]) -> PauliTranslation {
        gates.iter().fold(*self, |t, g| t.conjugate_by(g))
    }

    /// `U^dagger T U` for the circuit `U` given in application order.
    pub fn conjugate_by_circuit_inverse(&self, gates: &[Gate]) -> PauliTranslation {
        // every gate here is self-inverse
        gates.iter().rev().fold(*self, |t, g| t.conjugate_by(g))
    }

    /// One letter per qubit, without the phase prefix.
    pub fn letters(&self) -> String {
        (0..self.n)
            .map(|i| match ((self.x >> i) & 1, (self.z >> i) & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, _) => 'Z',
                _ => 'Y',
            })
            .collect()
    }
}

impl fmt::Display for PauliTranslation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["+", "+i", "-", "-i"][self.leftover_phase() as usize];
        write!(f, "{prefix}{}", self.letters())
    }
}

impl FromStr for PauliTranslation {
    type Err = Error;

    /// Parses `+XXI`, `-iYZX`, `iZ`, `XY` (prefix optional).
    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: &str| Error::PauliParse { input: input.to_string(), reason: reason.into() };
        let s = input.trim();
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'+') => (0u8, &s[1..]),
            Some(b'-') => (2u8, &s[1..]),
            _ => (0u8, s),
        };
        let (k, letters) = match rest.strip_prefix('i') {
            Some(r) => (1u8, r),
            None => (0u8, rest),
        };
        if letters.is_empty() {
            return Err(fail("no qubit letters"));
        }
        let n = letters.chars().count();
        if n > 32 {
            return Err(fail("more than 32 qubits"));
        }
        let (mut x, mut z) = (0u32, 0u32);
        for (i, c) in letters.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x |= 1 << i,
                'Z' => z |= 1 << i,
                'Y' => {
                    x |= 1 << i;
                    z |= 1 << i;
                }
                _ => return Err(fail(&format!("unexpected character {c:?}"))),
            }
        }
        Ok(PauliTranslation::new(n, x, z).times_i_pow(sign + k))
    }
}

/// Clifford gates needed for the squeezing circuit. Qubits are 0-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Swap(usize, usize),
    H(usize),
}

impl Gate {
    pub fn to_matrix(&self, n: usize) -> Result<CMatrix> {
        dense::check_dense(n)?;
        let dim = 1usize << n;
        let pos = |q: usize| n - 1 - q;
        let mut m = CMatrix::zeros(dim, dim);
        match *self {
            Gate::Cnot { control, target } => {
                for k in 0..dim {
                    let flip = (k >> pos(control)) & 1;
                    m[(k ^ flip << pos(target), k)] = dense::ONE;
                }
            }
            Gate::Swap(i, j) => {
                for k in 0..dim {
                    let (bi, bj) = ((k >> pos(i)) & 1, (k >> pos(j)) & 1);
                    let img = (k & !(1 << pos(i)) & !(1 << pos(j))) | bi << pos(j) | bj << pos(i);
                    m[(img, k)] = dense::ONE;
                }
            }
            Gate::H(q) => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                for k in 0..dim {
                    let b = (k >> pos(q)) & 1;
                    let k0 = k & !(1 << pos(q));
                    m[(k0, k)] += dense::ONE * h;
                    m[(k0 | 1 << pos(q), k)] += dense::ONE * if b == 1 { -h } else { h };
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "CNOT {control} -> {target}"),
            Gate::Swap(i, j) => write!(f, "SWAP {i} {j}"),
            Gate::H(q) => write!(f, "H {q}"),
        }
    }
}

/// Matrix of a circuit given in application order.
pub fn circuit_matrix(n: usize, gates: &[Gate]) -> Result<CMatrix> {
    let dim = 1usize << n;
    dense::check_dense(n)?;
    gates.iter().try_fold(dense::identity(dim), |acc, g| Ok(g.to_matrix(n)? * acc))
}

/// The translations attached to the points of one ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingClass {
    pub label: StriationLabel,
    /// Identity first, then the ray points in power order.
    pub members: Vec<PauliTranslation>,
}

pub fn commuting_class(spec: &FieldSpec, label: StriationLabel) -> CommutingClass {
    let members = Line::ray(spec, label)
        .points(spec)
        .into_iter()
        .map(|pt| PauliTranslation::from_point(spec.n(), pt.to_binary(spec)))
        .collect::<Vec<_>>();
    // points() walks the free coordinate in power order starting from 0
    CommutingClass { label, members }
}

pub fn commuting_classes(spec: &FieldSpec) -> Vec<CommutingClass> {
    StriationLabel::all(spec).into_iter().map(|l| commuting_class(spec, l)).collect()
}
