//! Arithmetic in GF(2^n) built from a primitive polynomial and its companion
//! matrix.
//!
//! Elements are stored as their coefficient vector in the canonical basis
//! `{1, w, ..., w^(n-1)}`: bit `i` of the packed `u32` is the coefficient of
//! `w^i`. Multiplying by the primitive element `w` is the row-vector action
//! `a' = a M` of the companion matrix `M`; its transpose generates the
//! coordinates used for the momentum axis.
//!
//! Construction validates primitivity by walking the multiplicative orbit of
//! `1` and precomputes discrete log/antilog tables, so `mul` is two table
//! lookups.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};

pub const MAX_QUBITS: usize = 16;

/// Environment variable naming an alternate primitive-polynomial table.
pub const POLY_TABLE_ENV: &str = "GFWIGNER_POLY_TABLE";

/// An element of GF(2^n) in canonical coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn from_bits(bits: u32) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

/// Which matrix drives a binary ordering: `M` (canonical coordinates) or its
/// transpose (coordinates in a multiple of the dual basis).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Companion,
    Transpose,
}

/// A monic binary polynomial `r_0 + r_1 x + ... + x^n`, stored with bit `i`
/// holding `r_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    degree: usize,
    coeffs: u32,
}

impl Polynomial {
    /// Build from the full coefficient vector `r_0, ..., r_n` (low to high).
    pub fn from_coefficients(coeffs: &[u8]) -> Result<Self> {
        if coeffs.len() < 2 || coeffs.len() > MAX_QUBITS + 1 {
            return Err(Error::InvalidPolynomial(format!(
                "need between 2 and {} coefficients, got {}",
                MAX_QUBITS + 1,
                coeffs.len()
            )));
        }
        let mut bits = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                _ => {
                    return Err(Error::InvalidPolynomial(format!(
                        "coefficient {i} is {c}, expected 0 or 1"
                    )))
                }
            }
        }
        let degree = coeffs.len() - 1;
        if bits >> degree & 1 == 0 {
            return Err(Error::InvalidPolynomial(format!(
                "leading coefficient of x^{degree} must be 1"
            )));
        }
        Ok(Polynomial { degree, coeffs: bits })
    }

    /// Parse a low-to-high coefficient string such as `"1011"` (= x^3 + x^2 + 1).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let coeffs: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidPolynomial(format!("unexpected character {c:?} in {s:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::from_coefficients(&coeffs)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `r_i` for `i <= n`.
    pub fn coefficient(&self, i: usize) -> u8 {
        (self.coeffs >> i & 1) as u8
    }

    /// Low coefficients `r_0 .. r_{n-1}` packed, without the leading term.
    pub fn low_bits(&self) -> u32 {
        self.coeffs & gf2::low_mask(self.degree)
    }

    pub fn to_bit_string(&self) -> String {
        gf2::bit_string(self.coeffs, self.degree + 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..=self.degree)
            .rev()
            .filter(|&i| self.coefficient(i) == 1)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Default primitive polynomials, one per degree.
///
/// Degrees 2, 3 and 4 use x^2+x+1, x^3+x^2+1 and x^4+x+1 so that the
/// orderings of the binary labels match the published tables.
const BUILTIN_POLYS: [u32; MAX_QUBITS] = [
    0b11,                // x + 1
    0b111,               // x^2 + x + 1
    0b1101,              // x^3 + x^2 + 1
    0b10011,             // x^4 + x + 1
    0b100101,            // x^5 + x^2 + 1
    0b1000011,           // x^6 + x + 1
    0b10000011,          // x^7 + x + 1
    0x11D,               // x^8 + x^4 + x^3 + x^2 + 1
    0x211,               // x^9 + x^4 + 1
    0x409,               // x^10 + x^3 + 1
    0x805,               // x^11 + x^2 + 1
    0x1053,              // x^12 + x^6 + x^4 + x + 1
    0x201B,              // x^13 + x^4 + x^3 + x + 1
    0x4443,              // x^14 + x^10 + x^6 + x + 1
    0x8003,              // x^15 + x + 1
    0x1100B,             // x^16 + x^12 + x^3 + x + 1
];

/// Primitive polynomials indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTable {
    entries: BTreeMap<usize, Polynomial>,
}

impl PolyTable {
    pub fn builtin() -> Self {
        let entries = BUILTIN_POLYS
            .iter()
            .enumerate()
            .map(|(i, &coeffs)| (i + 1, Polynomial { degree: i + 1, coeffs }))
            .collect();
        PolyTable { entries }
    }

    /// Parse a table file: one polynomial per line, coefficients low to high.
    /// Blank lines and lines starting with `#` are ignored. Entries override
    /// the built-in table for their degree.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = Self::builtin();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let poly = Polynomial::parse(line)?;
            table.entries.insert(poly.degree(), poly);
        }
        Ok(table)
    }

    /// Built-in table, overridden by the file named in `GFWIGNER_POLY_TABLE`
    /// when that variable is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(POLY_TABLE_ENV) {
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::InvalidPolynomial(format!(
                        "cannot read {}: {e}",
                        std::path::Path::new(&path).display()
                    ))
                })?;
                Self::parse(&text)
            }
            None => Ok(Self::builtin()),
        }
    }

    pub fn get(&self, n: usize) -> Option<Polynomial> {
        self.entries.get(&n).copied()
    }
}

/// A validated description of GF(2^n) with lookup tables.
#[derive(Clone)]
pub struct FieldSpec {
    n: usize,
    poly: Polynomial,
    companion: BitMatrix,
    companion_t: BitMatrix,
    /// `exp[j]` = bits of `w^j`, `j < 2^n - 1`.
    exp: Vec<u32>,
    /// `log[x]` = `j` with `w^j = x`; entry 0 unused.
    log: Vec<u32>,
    momentum: Vec<u32>,
    momentum_inv: Vec<u32>,
    powers_of_m: Vec<BitMatrix>,
    momentum_scale: FieldElement,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("n", &self.n)
            .field("poly", &self.poly.to_string())
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.poly == other.poly
    }
}

impl Eq for FieldSpec {}

/// Companion matrix of `r_0 + ... + r_{n-1} x^{n-1} + x^n`: ones on the
/// superdiagonal, last row `(r_0, ..., r_{n-1})`.
pub fn companion_matrix(poly: &Polynomial) -> BitMatrix {
    let n = poly.degree();
    let mut rows = vec![0u32; n];
    for (i, row) in rows.iter_mut().enumerate().take(n - 1) {
        *row = 1 << (i + 1);
    }
    rows[n - 1] = poly.low_bits();
    BitMatrix::from_rows(n, rows)
}

impl FieldSpec {
    /// The field for `n` qubits with the built-in polynomial.
    pub fn new(n: usize) -> Result<Self> {
        Self::from_table(n, &PolyTable::builtin())
    }

    pub fn from_table(n: usize, table: &PolyTable) -> Result<Self> {
        check_size(n)?;
        let poly = table.get(n).ok_or_else(|| {
            Error::InvalidPolynomial(format!("no polynomial of degree {n} in table"))
        })?;
        Self::with_polynomial(poly)
    }

    /// Build with an explicit coefficient vector `r_0, ..., r_{n-1}, 1`.
    pub fn with_coefficients(n: usize, coeffs: &[u8]) -> Result<Self> {
        check_size(n)?;
        if coeffs.len() != n + 1 {
            return Err(Error::DegreeMismatch { expected: n + 1, got: coeffs.len() });
        }
        Self::with_polynomial(Polynomial::from_coefficients(coeffs)?)
    }

    pub fn with_polynomial(poly: Polynomial) -> Result<Self> {
        let n = poly.degree();
        check_size(n)?;
        if poly.coefficient(0) == 0 {
            return Err(Error::NonPrimitivePolynomial(format!("{poly} (divisible by x)")));
        }
        let size = 1usize << n;
        let order = size - 1;
        let companion = companion_matrix(&poly);

        // Walk w^0, w^1, ... ; primitive iff the first return to 1 is at 2^n - 1.
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; size];
        let mut x = 1u32;
        for j in 0..order {
            if j > 0 && x == 1 {
                return Err(Error::NonPrimitivePolynomial(format!(
                    "{poly} (w has order {j} < {order})"
                )));
            }
            exp.push(x);
            log[x as usize] = j as u32;
            x = companion.apply(x);
        }
        if x != 1 {
            return Err(Error::NonPrimitivePolynomial(poly.to_string()));
        }

        let companion_t = companion.transpose();
        let mut momentum = vec![0u32; size];
        let mut momentum_inv = vec![0u32; size];
        let mut pb = 1u32;
        for &e in &exp {
            momentum[e as usize] = pb;
            momentum_inv[pb as usize] = e;
            pb = companion_t.apply(pb);
        }

        let mut powers_of_m = Vec::with_capacity(n);
        let mut m = BitMatrix::identity(n);
        for _ in 0..n {
            powers_of_m.push(m.clone());
            m = m.mul(&companion);
        }

        let mut spec = FieldSpec {
            n,
            poly,
            companion,
            companion_t,
            exp,
            log,
            momentum,
            momentum_inv,
            powers_of_m,
            momentum_scale: FieldElement::ONE,
        };
        spec.momentum_scale = spec.dual_basis(&spec.canonical_basis())?[0];
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = 2^n`, the number of field elements.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    /// `2^n - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> usize {
        self.size() - 1
    }

    pub fn polynomial(&self) -> Polynomial {
        self.poly
    }

    pub fn companion(&self) -> &BitMatrix {
        &self.companion
    }

    pub fn companion_transpose(&self) -> &BitMatrix {
        &self.companion_t
    }

    pub fn generator(&self, which: Generator) -> &BitMatrix {
        match which {
            Generator::Companion => &self.companion,
            Generator::Transpose => &self.companion_t,
        }
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        (x.0 as usize) < self.size()
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        let x = FieldElement(bits);
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::FieldMismatch { bits, n: self.n })
        }
    }

    /// `w^j`, with `j` taken modulo `2^n - 1`.
    pub fn omega_pow(&self, j: i64) -> FieldElement {
        let order = self.group_order() as i64;
        FieldElement(self.exp[j.rem_euclid(order) as usize])
    }

    /// Discrete logarithm base `w`; `None` for zero.
    pub fn log(&self, x: FieldElement) -> Option<usize> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize] as usize)
        }
    }

    /// Position in the axis ordering `0, 1, w, w^2, ...`.
    pub fn index_of(&self, x: FieldElement) -> usize {
        self.log(x).map_or(0, |j| j + 1)
    }

    /// Inverse of [`FieldSpec::index_of`].
    pub fn element_at(&self, index: usize) -> FieldElement {
        if index == 0 {
            FieldElement::ZERO
        } else {
            FieldElement(self.exp[index - 1])
        }
    }

    /// All elements in axis order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        x + y
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let j = self.log[x.0 as usize] as usize + self.log[y.0 as usize] as usize;
        FieldElement(self.exp[j % self.group_order()])
    }

    /// `mul` with membership checks on both operands.
    pub fn checked_mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.element(x.0)?;
        self.element(y.0)?;
        Ok(self.mul(x, y))
    }

    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        self.log(x).map(|j| self.omega_pow(-(j as i64)))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Option<FieldElement> {
        self.inv(y).map(|yi| self.mul(x, yi))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        match self.log(x) {
            None if e == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(j) => {
                let order = self.group_order() as u64;
                FieldElement(self.exp[((j as u64 * (e % order)) % order) as usize])
            }
        }
    }

    /// Field trace `x + x^2 + x^4 + ... + x^(2^(n-1))`, always 0 or 1.
    pub fn trace(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut term = x;
        for _ in 0..self.n {
            acc += term;
            term = self.mul(term, term);
        }
        debug_assert!(acc.0 <= 1, "trace left GF(2)");
        acc.0
    }

    /// The binary matrix `sum_i x_i M^i` representing `x`.
    pub fn matrix_of(&self, x: FieldElement) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.n);
        for (i, m) in self.powers_of_m.iter().enumerate() {
            if (x.0 >> i) & 1 == 1 {
                let rows: Vec<u32> = out.rows().iter().zip(m.rows()).map(|(a, b)| a ^ b).collect();
                out = BitMatrix::from_rows(self.n, rows);
            }
        }
        out
    }

    /// The unique basis `d` with `tr(d_i e_j) = delta_ij`.
    pub fn dual_basis(&self, basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if basis.len() != self.n {
            return Err(Error::SingularBasis);
        }
        for &e in basis {
            self.element(e.0)?;
        }
        // Row m of the trace form: tr(w^m e_j) for each j.
        let rows: Vec<u32> = (0..self.n)
            .map(|m| {
                let wm = FieldElement(1 << m);
                basis
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &e)| acc | self.trace(self.mul(wm, e)) << j)
            })
            .collect();
        let form = BitMatrix::from_rows(self.n, rows);
        let inv = form.inverse().ok_or(Error::SingularBasis)?;
        Ok(inv.rows().iter().map(|&r| FieldElement(r)).collect())
    }

    pub fn canonical_basis(&self) -> Vec<FieldElement> {
        (0..self.n).map(|i| FieldElement(1 << i)).collect()
    }

    /// The cycle `seed, seed G, seed G^2, ...` of length `2^n - 1`.
    pub fn power_ordering(&self, which: Generator, seed: u32) -> Result<Vec<u32>> {
        if seed == 0 {
            return Err(Error::ZeroSeed);
        }
        self.element(seed)?;
        Ok(self.generator(which).orbit(seed, self.group_order()))
    }

    /// Axis labels: the zero string followed by the orbit of `1`.
    pub fn axis_labels(&self, which: Generator) -> Vec<u32> {
        let mut out = vec![0];
        out.extend(self.power_ordering(which, 1).expect("seed 1 is valid"));
        out
    }

    /// Binary string attached to momentum `p`: `1 M~^j` for `p = w^j`.
    pub fn momentum_bits(&self, p: FieldElement) -> u32 {
        self.momentum[p.0 as usize]
    }

    pub fn momentum_from_bits(&self, bits: u32) -> FieldElement {
        FieldElement(self.momentum_inv[bits as usize])
    }

    /// The basis `f_i` in which momentum bits are coordinates.
    pub fn momentum_basis(&self) -> Vec<FieldElement> {
        (0..self.n).map(|i| self.momentum_from_bits(1 << i)).collect()
    }

    /// The scale `s` with `momentum_bits(p)_i = tr(s w^i p)`; equals the first
    /// element of the dual of the canonical basis.
    pub fn momentum_scale(&self) -> FieldElement {
        self.momentum_scale
    }

    /// Short label: `0`, `1`, `w`, `w^k`.
    pub fn label(&self, x: FieldElement) -> String {
        match self.log(x) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "w".into(),
            Some(j) => format!("w^{j}"),
        }
    }

    /// Parse a label produced by [`FieldSpec::label`], or a bit string.
    pub fn parse_label(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = || Error::Format(format!("cannot parse field element {s:?}"));
        match s {
            "0" => Ok(FieldElement::ZERO),
            "1" => Ok(FieldElement::ONE),
            "w" => Ok(self.omega_pow(1)),
            _ => {
                if let Some(k) = s.strip_prefix("w^") {
                    let k: i64 = k.parse().map_err(|_| bad())?;
                    Ok(self.omega_pow(k))
                } else {
                    if s.len() != self.n {
                        return Err(bad());
                    }
                    let bits = gf2::parse_bit_string(s).ok_or_else(bad)?;
                    self.element(bits)
                }
            }
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        Err(Error::UnsupportedSize { got: n, max: MAX_QUBITS })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::bit_string;

    fn fe(b: u32) -> FieldElement {
        FieldElement::from_bits(b)
    }

    fn ordering_strings(spec: &FieldSpec, which: Generator) -> Vec<String> {
        spec.axis_labels(which).iter().map(|&b| bit_string(b, spec.n())).collect()
    }

    #[test]
    fn default_polynomials() {
        assert_eq!(FieldSpec::new(2).unwrap().polynomial().to_string(), "x^2 + x + 1");
        assert_eq!(FieldSpec::new(3).unwrap().polynomial().to_string(), "x^3 + x^2 + 1");
        assert_eq!(FieldSpec::new(4).unwrap().polynomial().to_string(), "x^4 + x + 1");
    }

    #[test]
    fn every_builtin_polynomial_is_primitive() {
        for n in 1..=MAX_QUBITS {
            let spec = FieldSpec::new(n).unwrap();
            assert_eq!(spec.exp.len(), (1 << n) - 1);
        }
    }

    #[test]
    fn alternative_cubic_accepted_and_reducible_rejected() {
        // x^3 + x + 1
        assert!(FieldSpec::with_coefficients(3, &[1, 1, 0, 1]).is_ok());
        // x^4 + x^3 + x^2 + x + 1 is irreducible but w has order 5
        assert!(matches!(
            FieldSpec::with_coefficients(4, &[1, 1, 1, 1, 1]),
            Err(Error::NonPrimitivePolynomial(_))
        ));
        // x^2 + 1 = (x + 1)^2
        assert!(matches!(
            FieldSpec::with_coefficients(2, &[1, 0, 1]),
            Err(Error::NonPrimitivePolynomial(_))
        ));
        assert!(matches!(
            FieldSpec::with_coefficients(3, &[1, 1, 1]),
            Err(Error::DegreeMismatch { expected: 4, got: 3 })
        ));
        assert!(matches!(FieldSpec::new(0), Err(Error::UnsupportedSize { .. })));
        assert!(matches!(FieldSpec::new(17), Err(Error::UnsupportedSize { .. })));
    }

    #[test]
    fn multiplication_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let w = f2.omega_pow(1);
        assert_eq!(f2.mul(w, w), fe(0b11));
        for x in f2.elements() {
            assert_eq!(f2.mul(x, FieldElement::ZERO), FieldElement::ZERO);
        }
        let f3 = FieldSpec::new(3).unwrap();
        // w^3 = 1 + w^2
        assert_eq!(f3.omega_pow(3), fe(0b101));
        // listed elements w^3..w^6: 1+w^2, 1+w+w^2, 1+w, w+w^2
        let listed: Vec<u32> = (3..7).map(|j| f3.omega_pow(j).bits()).collect();
        assert_eq!(listed, vec![0b101, 0b111, 0b011, 0b110]);
        assert!(f3.checked_mul(fe(8), fe(1)).is_err());
    }

    #[test]
    fn trace_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(f2.trace(FieldElement::ZERO), 0);
        assert_eq!(f2.trace(f2.omega_pow(1)), 1);
        assert_eq!(f3.trace(FieldElement::ONE), 1);
    }

    #[test]
    fn trace_matches_matrix_trace() {
        for n in 1..=6 {
            let spec = FieldSpec::new(n).unwrap();
            for x in spec.elements() {
                assert_eq!(spec.trace(x), spec.matrix_of(x).trace(), "n={n} x={x:?}");
            }
        }
    }

    #[test]
    fn mul_matches_companion_matrix_product() {
        for n in 1..=4 {
            let spec = FieldSpec::new(n).unwrap();
            for x in spec.elements() {
                for y in spec.elements() {
                    assert_eq!(spec.mul(x, y).bits(), spec.matrix_of(y).apply(x.bits()));
                }
            }
        }
    }

    #[test]
    fn companion_order_by_matrix_powers() {
        for n in 1..=6 {
            let spec = FieldSpec::new(n).unwrap();
            let m = spec.companion();
            let order = spec.group_order() as u64;
            assert!(m.pow(order).is_identity());
            for j in 1..order {
                assert!(!m.pow(j).is_identity(), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn dual_basis_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let e = f2.canonical_basis();
        let d = f2.dual_basis(&e).unwrap();
        assert_eq!(d, vec![fe(0b11), fe(0b01)]);
        assert_eq!(f2.dual_basis(&d).unwrap(), e);

        let f3 = FieldSpec::new(3).unwrap();
        let d3 = f3.dual_basis(&f3.canonical_basis()).unwrap();
        assert_eq!(d3, vec![f3.omega_pow(4), f3.omega_pow(3), f3.omega_pow(5)]);

        assert_eq!(f2.dual_basis(&[fe(1), fe(1)]), Err(Error::SingularBasis));
    }

    #[test]
    fn momentum_basis_is_scaled_dual() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(f2.momentum_basis(), f2.canonical_basis());
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(
            f3.momentum_basis(),
            vec![FieldElement::ONE, f3.omega_pow(6), f3.omega_pow(1)]
        );
        for n in 1..=6 {
            let spec = FieldSpec::new(n).unwrap();
            let dual = spec.dual_basis(&spec.canonical_basis()).unwrap();
            let s = spec.momentum_scale();
            let expected: Vec<_> = dual.iter().map(|&d| spec.div(d, s).unwrap()).collect();
            assert_eq!(spec.momentum_basis(), expected);
            // bits are traces against the scaled canonical basis
            for p in spec.elements() {
                let bits = (0..n).fold(0u32, |acc, i| {
                    acc | spec.trace(spec.mul(spec.mul(s, FieldElement::from_bits(1 << i)), p)) << i
                });
                assert_eq!(spec.momentum_bits(p), bits);
            }
        }
    }

    #[test]
    fn published_orderings() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(ordering_strings(&f2, Generator::Companion), ["00", "10", "01", "11"]);
        assert_eq!(ordering_strings(&f2, Generator::Transpose), ["00", "10", "01", "11"]);

        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(
            ordering_strings(&f3, Generator::Companion),
            ["000", "100", "010", "001", "101", "111", "110", "011"]
        );
        assert_eq!(
            ordering_strings(&f3, Generator::Transpose),
            ["000", "100", "001", "011", "111", "110", "101", "010"]
        );
        assert_eq!(f3.power_ordering(Generator::Companion, 0), Err(Error::ZeroSeed));
    }

    #[test]
    fn labels_roundtrip() {
        let f3 = FieldSpec::new(3).unwrap();
        for x in f3.elements() {
            assert_eq!(f3.parse_label(&f3.label(x)).unwrap(), x);
        }
        assert_eq!(f3.parse_label("101").unwrap(), f3.omega_pow(3));
    }

    #[test]
    fn poly_table_override() {
        let t = PolyTable::parse("# alternate cubic\n1101\n\n").unwrap();
        assert_eq!(t.get(3).unwrap().to_string(), "x^3 + x + 1");
        assert_eq!(t.get(2), PolyTable::builtin().get(2));
        assert!(PolyTable::parse("10a1").is_err());
    }
}
