//! Dense linear algebra over GF(2) for small dimensions.
//!
//! Vectors are row vectors packed into a `u32` (bit `i` is component `i`), so
//! the dimension is limited to 32. Matrices act on the right: `v' = v M`,
//! which matches the way field elements are multiplied by the companion
//! matrix.

use std::fmt;

/// Parity of the set bits of `x`.
#[inline]
pub fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

/// GF(2) dot product of two packed vectors.
#[inline]
pub fn dot(a: u32, b: u32) -> u32 {
    parity(a & b)
}

/// Square binary matrix with packed rows; row `i` bit `j` is entry `(i, j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    dim: usize,
    rows: Vec<u32>,
}

impl BitMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= 32, "BitMatrix supports at most 32 columns");
        Self { dim, rows: vec![0; dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for (i, row) in m.rows.iter_mut().enumerate() {
            *row = 1 << i;
        }
        m
    }

    pub fn from_rows(dim: usize, rows: Vec<u32>) -> Self {
        assert_eq!(rows.len(), dim);
        assert!(dim <= 32);
        let mask = low_mask(dim);
        assert!(rows.iter().all(|r| r & !mask == 0), "row has bits beyond dimension");
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// Row vector times matrix: XOR of the rows selected by the bits of `v`.
    pub fn apply(&self, v: u32) -> u32 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out ^= self.rows[i];
            bits &= bits - 1;
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.dim, other.dim);
        BitMatrix {
            dim: self.dim,
            rows: self.rows.iter().map(|&r| other.apply(r)).collect(),
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn pow(&self, mut e: u64) -> BitMatrix {
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    /// Binary trace (parity of the diagonal).
    pub fn trace(&self) -> u32 {
        (0..self.dim).fold(0, |acc, i| acc ^ (self.rows[i] >> i & 1))
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.dim;
        let mut a = self.rows.clone();
        let mut inv = BitMatrix::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| (a[r] >> col) & 1 == 1)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && (a[r] >> col) & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(BitMatrix { dim: n, rows: inv })
    }

    /// The orbit `seed, seed M, seed M^2, ...` until it returns to `seed`.
    ///
    /// Stops after `limit` steps without closing the cycle and returns what
    /// it has so far.
    pub fn orbit(&self, seed: u32, limit: usize) -> Vec<u32> {
        let mut out = vec![seed];
        let mut v = self.apply(seed);
        while v != seed && out.len() < limit {
            out.push(v);
            v = self.apply(v);
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.dim)?;
        for &r in &self.rows {
            writeln!(f, "  {}", bit_string(r, self.dim))?;
        }
        Ok(())
    }
}

pub fn low_mask(dim: usize) -> u32 {
    if dim >= 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// Bit `0` first, e.g. `0b011` with `dim = 3` is `"110"`.
pub fn bit_string(v: u32, dim: usize) -> String {
    (0..dim).map(|i| if (v >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Inverse of [`bit_string`]; `None` on characters other than `0`/`1`.
pub fn parse_bit_string(s: &str) -> Option<u32> {
    if s.len() > 32 {
        return None;
    }
    s.chars().enumerate().try_fold(0u32, |acc, (i, c)| match c {
        '0' => Some(acc),
        '1' => Some(acc | 1 << i),
        _ => None,
    })
}

pub fn rank_of(vectors: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Solve `row_k · x = rhs_k` for all equations, with `vars` unknowns.
///
/// Returns one solution (free variables set to zero) or `None` when the
/// system is inconsistent.
pub fn solve_affine(equations: &[(u32, bool)], vars: usize) -> Option<u32> {
    let mut rows: Vec<(u32, bool)> = equations.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..vars {
        let Some(p) = (next..rows.len()).find(|&r| (rows[r].0 >> col) & 1 == 1) else {
            continue;
        };
        rows.swap(next, p);
        let (pr, pb) = rows[next];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && (row.0 >> col) & 1 == 1 {
                row.0 ^= pr;
                row.1 ^= pb;
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    if rows[next..].iter().any(|&(r, b)| r == 0 && b) {
        return None;
    }
    let mut x = 0u32;
    for &(r, col) in &pivots {
        if rows[r].1 {
            x |= 1 << col;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = BitMatrix::from_rows(3, vec![0b010, 0b100, 0b101]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = BitMatrix::from_rows(2, vec![0b11, 0b11]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn bit_strings() {
        assert_eq!(bit_string(0b011, 3), "110");
        assert_eq!(parse_bit_string("110"), Some(0b011));
        assert_eq!(parse_bit_string("1x0"), None);
    }

    #[test]
    fn affine_solver() {
        // x0 + x1 = 1, x1 = 1  ->  x0 = 0, x1 = 1
        let sol = solve_affine(&[(0b11, true), (0b10, true)], 2).unwrap();
        assert_eq!(sol, 0b10);
        // inconsistent: x0 = 0 and x0 = 1
        assert!(solve_affine(&[(0b1, false), (0b1, true)], 1).is_none());
        // redundant equations are fine
        assert!(solve_affine(&[(0b1, true), (0b1, true)], 1).is_some());
    }
}
