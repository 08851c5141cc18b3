//! Phase-space point operators and discrete Wigner functions.
//!
//! `A(a) = (1/N^2) sum_b (-1)^{a ^ b} f_b T_b`, so every Wigner function is a
//! symplectic Walsh-Hadamard transform of the translation expectation values
//! weighted by the net's sign function. Dense paths use that transform;
//! stabilizer states take the same route in exact integer arithmetic.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::dense::{self, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::gf2;
use crate::net::{self, QuantumNet, Signs};
use crate::pauli::PauliTranslation;
use crate::phasespace::{self, all_points, BinaryPoint, Line, PhasePoint, StriationLabel};

pub type Rational = Ratio<i64>;

/// Exact grids are limited to this size (N^2 cells).
pub const MAX_EXACT_GRID_QUBITS: usize = 8;

const TOL: f64 = 1e-10;

/// In-place unnormalized Walsh-Hadamard transform; `data.len()` must be a
/// power of two.
pub fn walsh_hadamard<T>(data: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (data[i], data[i + h]);
                data[i] = a + b;
                data[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

fn key(n: usize, beta: BinaryPoint) -> usize {
    ((beta.qbits as usize) << n) | beta.pbits as usize
}

fn point_of_key(n: usize, k: usize) -> BinaryPoint {
    BinaryPoint::new((k >> n) as u32, (k & ((1 << n) - 1)) as u32)
}

/// `out[a] = sum_b (-1)^{a ^ b} g[b]`, both indexed by `key`.
fn symplectic_transform<T>(n: usize, g: &[T], zero: T) -> Vec<T>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    // Swapping the halves of b's key turns the wedge into a plain dot product.
    let mut h = vec![zero; g.len()];
    for (k, &v) in g.iter().enumerate() {
        let b = point_of_key(n, k);
        h[((b.pbits as usize) << n) | b.qbits as usize] = v;
    }
    walsh_hadamard(&mut h);
    h
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positivity (eigenvalues above
    /// `-1e-10`).
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dim = matrix.nrows();
        if !matrix.is_square() || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected a 2^n x 2^n matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n = dim.trailing_zeros() as usize;
        dense::check_dense(n)?;
        if !dense::is_hermitian(&matrix, TOL) {
            return Err(Error::InvalidDensityMatrix("not hermitian".into()));
        }
        let tr = dense::trace(&matrix);
        if (tr - dense::ONE).norm() > TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {tr}")));
        }
        let min = matrix.clone().symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -TOL {
            return Err(Error::InvalidDensityMatrix(format!("eigenvalue {min:.3e} is negative")));
        }
        Ok(DensityMatrix { n, matrix })
    }

    pub fn from_state(v: &CVector) -> Result<Self> {
        let norm = v.norm();
        if norm < 1e-12 {
            return Err(Error::InvalidDensityMatrix("zero state vector".into()));
        }
        let u = v / Complex64::from(norm);
        Self::new(dense::projector(&u))
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        dense::check_dense(n)?;
        let dim = 1usize << n;
        Self::new(dense::identity(dim) / Complex64::from(dim as f64))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        dense::trace_product(&self.matrix, &self.matrix).re
    }

    /// `Tr(rho T)` for a translation, using its monomial structure.
    pub fn expectation(&self, t: &PauliTranslation) -> Complex64 {
        let n = self.n;
        let xa = dense::qubits_to_index(t.x_bits(), n) as usize;
        let zb = dense::qubits_to_index(t.z_bits(), n);
        // T|k> = phi(k) |k^xa>, so Tr(rho T) = sum_k rho[k, k^xa] phi(k)
        let mut acc = dense::ZERO;
        for k in 0..1usize << n {
            let sign = 2 * ((zb & k as u32).count_ones() % 2) as u8;
            acc += self.matrix[(k, k ^ xa)] * dense::i_pow(t.phase_exponent() + sign);
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Dense,
    StabilizerExact,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GridValues {
    Dense(Vec<f64>),
    Exact(Vec<Rational>),
}

/// `W(q, p)` stored at `PhasePoint::grid_index` (q major, power order).
#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    spec: Arc<FieldSpec>,
    values: GridValues,
    net_fingerprint: String,
}

impl WignerGrid {
    pub fn new(spec: Arc<FieldSpec>, values: GridValues, net_fingerprint: String) -> Result<Self> {
        let len = match &values {
            GridValues::Dense(v) => v.len(),
            GridValues::Exact(v) => v.len(),
        };
        let expected = spec.size() * spec.size();
        if len != expected {
            return Err(Error::Format(format!("grid has {len} values, expected {expected}")));
        }
        Ok(WignerGrid { spec, values, net_fingerprint })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn values(&self) -> &GridValues {
        &self.values
    }

    pub fn net_fingerprint(&self) -> &str {
        &self.net_fingerprint
    }

    pub fn provenance(&self) -> Provenance {
        match self.values {
            GridValues::Dense(_) => Provenance::Dense,
            GridValues::Exact(_) => Provenance::StabilizerExact,
        }
    }

    pub fn get(&self, pt: PhasePoint) -> f64 {
        self.get_index(pt.grid_index(&self.spec))
    }

    pub fn get_index(&self, i: usize) -> f64 {
        match &self.values {
            GridValues::Dense(v) => v[i],
            GridValues::Exact(v) => ratio_to_f64(v[i]),
        }
    }

    pub fn get_exact(&self, pt: PhasePoint) -> Option<Rational> {
        match &self.values {
            GridValues::Exact(v) => Some(v[pt.grid_index(&self.spec)]),
            GridValues::Dense(_) => None,
        }
    }

    /// All values, if the grid is exact.
    pub fn exact(&self) -> Option<&[Rational]> {
        match &self.values {
            GridValues::Exact(v) => Some(v),
            GridValues::Dense(_) => None,
        }
    }

    pub fn get_binary(&self, beta: BinaryPoint) -> f64 {
        self.get(beta.to_point(&self.spec))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        (0..self.spec.size() * self.spec.size()).map(|i| self.get_index(i)).collect()
    }

    pub fn total(&self) -> f64 {
        self.to_f64().iter().sum()
    }

    pub fn line_sum(&self, line: &Line) -> f64 {
        line.points(&self.spec).iter().map(|&pt| self.get(pt)).sum()
    }

    pub fn line_sum_exact(&self, line: &Line) -> Option<Rational> {
        line.points(&self.spec).iter().map(|&pt| self.get_exact(pt)).sum()
    }

    pub fn min_value(&self) -> f64 {
        self.to_f64().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Rows for display: `p` descending, `q` ascending, both in power order.
    pub fn display_rows(&self) -> Vec<Vec<f64>> {
        let n = self.spec.size();
        (0..n)
            .rev()
            .map(|pi| (0..n).map(|qi| self.get_index(qi * n + pi)).collect())
            .collect()
    }

    /// `sum_a W(a) W(a + shift)`.
    pub fn shifted_overlap(&self, shift: BinaryPoint) -> f64 {
        all_points(&self.spec)
            .map(|pt| {
                let b = pt.to_binary(&self.spec);
                self.get(pt) * self.get_binary(b + shift)
            })
            .sum()
    }

    /// The grid with points moved by `d`: `W'(a) = W(a + d)`.
    pub fn translated(&self, d: PhasePoint) -> WignerGrid {
        let idx = |pt: PhasePoint| (pt + d).grid_index(&self.spec);
        let values = match &self.values {
            GridValues::Dense(_) => {
                GridValues::Dense(all_points(&self.spec).map(|pt| self.get_index(idx(pt))).collect())
            }
            GridValues::Exact(v) => GridValues::Exact(all_points(&self.spec).map(|pt| v[idx(pt)]).collect()),
        };
        WignerGrid { spec: self.spec.clone(), values, net_fingerprint: self.net_fingerprint.clone() }
    }

    /// Exact version of a dense grid, rounding every value to a multiple of
    /// `1 / denominator`; `None` if some value is farther than `tol` from one.
    pub fn rationalize(&self, denominator: i64, tol: f64) -> Option<Vec<Rational>> {
        self.to_f64()
            .into_iter()
            .map(|x| {
                let k = (x * denominator as f64).round();
                if (x - k / denominator as f64).abs() <= tol {
                    Some(Rational::new(k as i64, denominator))
                } else {
                    None
                }
            })
            .collect()
    }
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    r.to_f64().expect("finite ratio")
}

/// Point operators of a net; `A(0)` is built once.
#[derive(Clone, Debug)]
pub struct PointOperators {
    net: QuantumNet,
    a0: CMatrix,
}

impl PointOperators {
    /// `A(0) = (1/N) (sum over rays of P_ray - I)`; `n <= 6`.
    pub fn new(net: &QuantumNet) -> Result<Self> {
        let spec = net.spec();
        dense::check_dense(spec.n())?;
        let dim = spec.size();
        let mut sum = -dense::identity(dim);
        for label in StriationLabel::all(spec) {
            sum += net.ray_projector(label)?;
        }
        Ok(PointOperators { net: net.clone(), a0: sum / Complex64::from(dim as f64) })
    }

    pub fn net(&self) -> &QuantumNet {
        &self.net
    }

    pub fn a0(&self) -> &CMatrix {
        &self.a0
    }

    /// `A(a) = T_a A(0) T_a`.
    pub fn at(&self, alpha: BinaryPoint) -> CMatrix {
        PauliTranslation::from_point(self.net.n(), alpha).conjugate_matrix(&self.a0)
    }

    pub fn at_point(&self, alpha: PhasePoint) -> CMatrix {
        self.at(alpha.to_binary(self.net.spec()))
    }

    /// `(1/N^2) sum_b (-1)^{a ^ b} f_b T_b`, built from translations only.
    pub fn from_translations(&self, alpha: BinaryPoint) -> Result<CMatrix> {
        let spec = self.net.spec();
        let n = spec.n();
        let dim = spec.size();
        let mut acc = CMatrix::zeros(dim, dim);
        for k in 0..dim * dim {
            let beta = point_of_key(n, k);
            let sign = if phasespace::wedge(alpha, beta) == 1 { -1.0 } else { 1.0 };
            let t = PauliTranslation::from_point(n, beta).to_matrix()?;
            acc += t * Complex64::from(sign * self.net.f(beta) as f64);
        }
        Ok(acc / Complex64::from((dim * dim) as f64))
    }

    /// `f_b sum_a (-1)^{a ^ b} A(a)`, which equals `T_b`.
    pub fn translation_from_a(&self, beta: BinaryPoint) -> CMatrix {
        let spec = self.net.spec();
        let dim = spec.size();
        let mut acc = CMatrix::zeros(dim, dim);
        for pt in all_points(spec) {
            let alpha = pt.to_binary(spec);
            let sign = if phasespace::wedge(alpha, beta) == 1 { -1.0 } else { 1.0 };
            acc += self.at(alpha) * Complex64::from(sign);
        }
        acc * Complex64::from(self.net.f(beta) as f64)
    }

    /// `Tr(A_a A_b A_c)`; complex in general.
    pub fn triple_product(&self, a: BinaryPoint, b: BinaryPoint, c: BinaryPoint) -> Complex64 {
        dense::trace_product(&(self.at(a) * self.at(b)), &self.at(c))
    }
}

/// `W(a) = Tr(rho A(a))`.
pub fn wigner_of(rho: &DensityMatrix, net: &QuantumNet) -> Result<WignerGrid> {
    let spec = net.spec();
    if rho.n() != spec.n() {
        return Err(Error::DimensionMismatch { left: rho.n(), right: spec.n() });
    }
    let n = spec.n();
    let nn = spec.size() * spec.size();
    let mut g = vec![0.0f64; nn];
    let mut max_imag: f64 = 0.0;
    for (k, slot) in g.iter_mut().enumerate() {
        let beta = point_of_key(n, k);
        let e = rho.expectation(&PauliTranslation::from_point(n, beta));
        max_imag = max_imag.max(e.im.abs());
        *slot = e.re * net.f(beta) as f64;
    }
    if max_imag > 1e-9 {
        return Err(Error::InvalidDensityMatrix(format!(
            "translation expectation has imaginary part {max_imag:.3e}"
        )));
    }
    let h = symplectic_transform(n, &g, 0.0);
    let scale = 1.0 / nn as f64;
    let mut values = vec![0.0; nn];
    for (k, v) in h.into_iter().enumerate() {
        let pt = point_of_key(n, k).to_point(spec);
        values[pt.grid_index(spec)] = v * scale;
    }
    WignerGrid::new(net.spec_arc().clone(), GridValues::Dense(values), net.fingerprint())
}

pub fn wigner_of_state(v: &CVector, net: &QuantumNet) -> Result<WignerGrid> {
    wigner_of(&DensityMatrix::from_state(v)?, net)
}

fn binary_values(grid: &WignerGrid) -> Vec<f64> {
    let spec = grid.spec();
    let n = spec.n();
    (0..spec.size() * spec.size()).map(|k| grid.get_binary(point_of_key(n, k))).collect()
}

fn check_net(grid: &WignerGrid, net: &QuantumNet) -> Result<()> {
    if grid.spec() != net.spec() {
        return Err(Error::DimensionMismatch { left: grid.n(), right: net.n() });
    }
    Ok(())
}

/// `Tr(rho T_b) = f_b sum_a W(a) (-1)^{a ^ b}` for every `b`, indexed by key.
fn all_expectations(grid: &WignerGrid, net: &QuantumNet) -> Vec<f64> {
    let n = grid.n();
    let h = symplectic_transform(n, &binary_values(grid), 0.0);
    // The transform is an involution up to N^2 and symmetric in a <-> b.
    (0..h.len()).map(|k| h[k] * net.f(point_of_key(n, k)) as f64).collect()
}

pub fn expectation_translation(grid: &WignerGrid, net: &QuantumNet, beta: BinaryPoint) -> Result<f64> {
    check_net(grid, net)?;
    let spec = grid.spec();
    let sum: f64 = all_points(spec)
        .map(|pt| {
            let sign = if phasespace::wedge(pt.to_binary(spec), beta) == 1 { -1.0 } else { 1.0 };
            sign * grid.get(pt)
        })
        .sum();
    Ok(sum * net.f(beta) as f64)
}

/// `rho = (1/N) sum_b Tr(rho T_b) T_b`, which equals `N sum_a W(a) A(a)`.
pub fn reconstruct_matrix(grid: &WignerGrid, net: &QuantumNet) -> Result<CMatrix> {
    check_net(grid, net)?;
    let n = grid.n();
    dense::check_dense(n)?;
    let dim = grid.spec().size();
    let exps = all_expectations(grid, net);
    let mut rho = CMatrix::zeros(dim, dim);
    for (k, &e) in exps.iter().enumerate() {
        if e.abs() < 1e-15 {
            continue;
        }
        let t = PauliTranslation::from_point(n, point_of_key(n, k));
        // add e * T without forming T densely
        let xa = dense::qubits_to_index(t.x_bits(), n) as usize;
        let zb = dense::qubits_to_index(t.z_bits(), n);
        for c in 0..dim {
            let sign = 2 * ((zb & c as u32).count_ones() % 2) as u8;
            rho[(c ^ xa, c)] += dense::i_pow(t.phase_exponent() + sign) * e;
        }
    }
    Ok(rho / Complex64::from(dim as f64))
}

pub fn reconstruct(grid: &WignerGrid, net: &QuantumNet) -> Result<DensityMatrix> {
    DensityMatrix::new(reconstruct_matrix(grid, net)?)
}

/// Both sides of `|sum_b W(b) (-1)^{a ^ b}|^2 = N sum_b W(b) W(b + a)`,
/// which holds for every `a` exactly when the state is pure.
pub fn purity_identity_check(grid: &WignerGrid, alpha: BinaryPoint) -> (f64, f64) {
    let spec = grid.spec();
    let lhs: f64 = all_points(spec)
        .map(|pt| {
            let sign = if phasespace::wedge(pt.to_binary(spec), alpha) == 1 { -1.0 } else { 1.0 };
            sign * grid.get(pt)
        })
        .sum();
    let rhs = spec.size() as f64 * grid.shifted_overlap(alpha);
    (lhs * lhs, rhs)
}

/// A stabilizer state: `T_b |psi> = g_b |psi>` for the `N` members `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    members: BTreeMap<BinaryPoint, i8>,
}

impl StabilizerGroup {
    /// Expand `n` independent commuting generators `+-T` into the full group.
    pub fn from_generators(gens: &[PauliTranslation]) -> Result<Self> {
        let n = gens.first().map(|g| g.n()).ok_or_else(|| {
            Error::InconsistentStabilizer("no generators".into())
        })?;
        for (i, a) in gens.iter().enumerate() {
            if a.n() != n {
                return Err(Error::DimensionMismatch { left: n, right: a.n() });
            }
            if a.leftover_phase() % 2 == 1 {
                return Err(Error::InconsistentStabilizer(format!("{a} is not hermitian")));
            }
            if gens[..i].iter().any(|b| !a.commutes(b)) {
                return Err(Error::NonCommutingGenerators);
            }
        }
        let mut members: BTreeMap<BinaryPoint, i8> = BTreeMap::new();
        members.insert(BinaryPoint::default(), 1);
        for g in gens {
            let existing: Vec<(BinaryPoint, i8)> = members.iter().map(|(&b, &s)| (b, s)).collect();
            for (b, s) in existing {
                let element = PauliTranslation::from_point(n, b).times_i_pow(if s < 0 { 2 } else { 0 });
                let prod = element.compose(g)?;
                let sign = if prod.leftover_phase() == 2 { -1 } else { 1 };
                match members.get(&prod.point()) {
                    Some(&old) if old != sign => {
                        return Err(Error::InconsistentStabilizer(format!(
                            "{} appears with both signs",
                            prod.canonical()
                        )))
                    }
                    Some(_) => {}
                    None => {
                        members.insert(prod.point(), sign);
                    }
                }
            }
        }
        if members.len() != 1 << n {
            return Err(Error::InconsistentStabilizer(format!(
                "generators span {} elements, need {}",
                members.len(),
                1u64 << n
            )));
        }
        Ok(StabilizerGroup { n, members })
    }

    /// Validate a complete member list with signs.
    pub fn from_members(n: usize, members: BTreeMap<BinaryPoint, i8>) -> Result<Self> {
        if members.len() != 1 << n {
            return Err(Error::InconsistentStabilizer(format!("need {} members", 1u64 << n)));
        }
        if members.get(&BinaryPoint::default()) != Some(&1) {
            return Err(Error::InconsistentStabilizer("identity must have sign +1".into()));
        }
        for (&a, &ga) in &members {
            for (&b, &gb) in &members {
                let ta = PauliTranslation::from_point(n, a);
                let tb = PauliTranslation::from_point(n, b);
                if !ta.commutes(&tb) {
                    return Err(Error::NonCommutingGenerators);
                }
                let prod = ta.compose(&tb)?;
                let sign = if prod.leftover_phase() == 2 { -1 } else { 1 };
                match members.get(&prod.point()) {
                    Some(&gc) if gc == sign * ga * gb => {}
                    _ => return Err(Error::InconsistentStabilizer("signs are not multiplicative".into())),
                }
            }
        }
        Ok(StabilizerGroup { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> impl Iterator<Item = (BinaryPoint, i8)> + '_ {
        self.members.iter().map(|(&b, &s)| (b, s))
    }

    pub fn sign(&self, beta: BinaryPoint) -> Option<i8> {
        self.members.get(&beta).copied()
    }

    /// Signed translations for a generating set (in member order).
    pub fn generators(&self) -> Vec<PauliTranslation> {
        let mut basis: Vec<u64> = Vec::new();
        let mut out = Vec::new();
        for (b, s) in self.members() {
            let v = ((b.qbits as u64) << 32) | b.pbits as u64;
            let mut x = v;
            for &e in &basis {
                x = x.min(x ^ e);
            }
            if x != 0 {
                basis.push(x);
                basis.sort_unstable_by(|a, b| b.cmp(a));
                out.push(PauliTranslation::from_point(self.n, b).times_i_pow(if s < 0 { 2 } else { 0 }));
            }
        }
        out
    }

    /// `(1/N) sum_b g_b T_b`.
    pub fn projector(&self) -> Result<CMatrix> {
        dense::check_dense(self.n)?;
        let dim = 1usize << self.n;
        let mut p = CMatrix::zeros(dim, dim);
        for (b, s) in self.members() {
            p += PauliTranslation::from_point(self.n, b).to_matrix()? * Complex64::from(s as f64);
        }
        Ok(p / Complex64::from(dim as f64))
    }

    pub fn state(&self) -> Result<CVector> {
        Ok(dense::state_of_projector(&self.projector()?))
    }

    /// Every stabilizer state on `n <= 3` qubits.
    pub fn all(n: usize) -> Result<Vec<StabilizerGroup>> {
        if n == 0 || n > 3 {
            return Err(Error::UnsupportedSize { got: n, max: 3 });
        }
        let points: Vec<BinaryPoint> =
            (1..1usize << (2 * n)).map(|k| point_of_key(n, k)).collect();
        let mut subspaces: HashSet<Vec<BinaryPoint>> = HashSet::new();
        let mut bases: Vec<Vec<BinaryPoint>> = Vec::new();
        lagrangians(n, &points, &mut Vec::new(), &mut subspaces, &mut bases);
        let mut out = Vec::new();
        for basis in bases {
            for signs in 0u32..1 << n {
                let gens: Vec<_> = basis
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| {
                        let t = PauliTranslation::from_point(n, b);
                        if (signs >> k) & 1 == 1 {
                            t.times_i_pow(2)
                        } else {
                            t
                        }
                    })
                    .collect();
                out.push(Self::from_generators(&gens)?);
            }
        }
        Ok(out)
    }

    /// A random stabilizer state (random independent commuting generators
    /// and random signs; not uniform over states).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<StabilizerGroup> {
        let mut gens: Vec<PauliTranslation> = Vec::new();
        let mut span: HashSet<BinaryPoint> = HashSet::from([BinaryPoint::default()]);
        while gens.len() < n {
            let cand = BinaryPoint::new(rng.gen_range(0..1u32 << n), rng.gen_range(0..1u32 << n));
            let t = PauliTranslation::from_point(n, cand);
            if span.contains(&cand) || gens.iter().any(|g| !g.commutes(&t)) {
                continue;
            }
            let new: Vec<_> = span.iter().map(|&b| b + cand).collect();
            span.extend(new);
            gens.push(if rng.gen::<bool>() { t.times_i_pow(2) } else { t });
        }
        Self::from_generators(&gens)
    }
}

fn lagrangians(
    n: usize,
    points: &[BinaryPoint],
    chosen: &mut Vec<BinaryPoint>,
    seen: &mut HashSet<Vec<BinaryPoint>>,
    bases: &mut Vec<Vec<BinaryPoint>>,
) {
    if chosen.len() == n {
        let mut span = vec![BinaryPoint::default()];
        for &c in chosen.iter() {
            let more: Vec<_> = span.iter().map(|&b| b + c).collect();
            span.extend(more);
        }
        span.sort();
        if seen.insert(span) {
            bases.push(chosen.clone());
        }
        return;
    }
    let start = chosen.last().map_or(0, |last| points.iter().position(|p| p == last).unwrap() + 1);
    for &p in &points[start..] {
        if chosen.iter().any(|&c| phasespace::wedge(c, p) == 1) {
            continue;
        }
        let vecs: Vec<u32> = chosen.iter().chain([&p]).map(|b| (b.qbits << n) | b.pbits).collect();
        if gf2::rank_of(&vecs) != vecs.len() {
            continue;
        }
        chosen.push(p);
        lagrangians(n, points, chosen, seen, bases);
        chosen.pop();
    }
}

fn check_group_net(group: &StabilizerGroup, net: &QuantumNet) -> Result<()> {
    if group.n() != net.n() {
        return Err(Error::DimensionMismatch { left: group.n(), right: net.n() });
    }
    Ok(())
}

/// `W(a) = (1/N^2) sum_{b in S} f_b g_b (-1)^{a ^ b}`, exactly; `n <= 8`.
pub fn stabilizer_wigner(group: &StabilizerGroup, net: &QuantumNet) -> Result<WignerGrid> {
    check_group_net(group, net)?;
    let n = group.n();
    if n > MAX_EXACT_GRID_QUBITS {
        return Err(Error::DimensionTooLarge { got: n, max: MAX_EXACT_GRID_QUBITS });
    }
    let spec = net.spec();
    let nn = spec.size() * spec.size();
    let mut g = vec![0i64; nn];
    for (b, s) in group.members() {
        g[key(n, b)] = (s * net.f(b)) as i64;
    }
    let h = symplectic_transform(n, &g, 0i64);
    let mut values = vec![Rational::zero(); nn];
    for (k, v) in h.into_iter().enumerate() {
        let pt = point_of_key(n, k).to_point(spec);
        values[pt.grid_index(spec)] = Rational::new(v, nn as i64);
    }
    WignerGrid::new(net.spec_arc().clone(), GridValues::Exact(values), net.fingerprint())
}

/// One value of the stabilizer formula; works for every supported `n`.
pub fn stabilizer_wigner_at(group: &StabilizerGroup, net: &QuantumNet, alpha: PhasePoint) -> Result<Rational> {
    check_group_net(group, net)?;
    let a = alpha.to_binary(net.spec());
    let sum: i64 = group
        .members()
        .map(|(b, s)| {
            let sign = if phasespace::wedge(a, b) == 1 { -1 } else { 1 };
            (sign * s * net.f(b)) as i64
        })
        .sum();
    let nn = 1i64 << (2 * group.n());
    Ok(Rational::new(sum, nn))
}

/// An independent net with `f_b = g_b` on every member of the group; rays
/// that meet the group only at the origin keep all-(+1) signs.
pub fn aligned_net(group: &StabilizerGroup, spec: Arc<FieldSpec>) -> Result<QuantumNet> {
    if group.n() != spec.n() {
        return Err(Error::DimensionMismatch { left: group.n(), right: spec.n() });
    }
    let base = QuantumNet::all_plus(spec.clone());
    let mut equations: BTreeMap<StriationLabel, Vec<(u32, bool)>> = BTreeMap::new();
    for (b, s) in group.members().filter(|(b, _)| !b.is_zero()) {
        let pt = b.to_point(&spec);
        let label = net::ray_label_of(&spec, pt);
        let coeff = match label {
            StriationLabel::V => pt.p.bits(),
            _ => pt.q.bits(),
        };
        equations.entry(label).or_default().push((coeff, s != base.f(b)));
    }
    let mut signs: Vec<Signs> = vec![0; spec.size() + 1];
    for (label, eqs) in equations {
        signs[label.index()] = gf2::solve_affine(&eqs, spec.n()).ok_or_else(|| {
            Error::InconsistentStabilizer(format!("no ray state on {label} matches the group"))
        })?;
    }
    QuantumNet::independent(spec, signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(n: usize) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(n).unwrap())
    }

    #[test]
    fn walsh_hadamard_small() {
        let mut v = [1.0, 0.0, 0.0, 0.0];
        walsh_hadamard(&mut v);
        assert_eq!(v, [1.0; 4]);
        let mut w = [1i64, 2, 3, 4];
        walsh_hadamard(&mut w);
        assert_eq!(w, [10, -2, -4, 0]);
    }

    #[test]
    fn a_operator_forms_agree() {
        for n in 1..=3 {
            let net = QuantumNet::covariant(spec(n), 1, 0, 1).unwrap();
            let ops = PointOperators::new(&net).unwrap();
            for pt in all_points(net.spec()) {
                let b = pt.to_binary(net.spec());
                let lhs = ops.at(b);
                let rhs = ops.from_translations(b).unwrap();
                assert!(dense::max_abs_diff(&lhs, &rhs) < 1e-12);
                assert!((dense::trace(&lhs).re - 1.0 / net.spec().size() as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wigner_matches_trace_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let net = QuantumNet::covariant(spec(2), 0, 2, 1).unwrap();
        let ops = PointOperators::new(&net).unwrap();
        let rho = DensityMatrix::new(dense::random_density(&mut rng, 4)).unwrap();
        let w = wigner_of(&rho, &net).unwrap();
        for pt in all_points(net.spec()) {
            let direct = dense::trace_product(rho.matrix(), &ops.at_point(pt));
            assert!(direct.im.abs() < 1e-12);
            assert!((direct.re - w.get(pt)).abs() < 1e-12);
        }
        assert!((w.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_is_flat() {
        let net = QuantumNet::all_plus(spec(3));
        let w = wigner_of(&DensityMatrix::maximally_mixed(3).unwrap(), &net).unwrap();
        for v in w.to_f64() {
            assert!((v - 1.0 / 64.0).abs() < 1e-14);
        }
    }

    #[test]
    fn line_state_is_uniform_on_its_line() {
        let s = spec(2);
        let net = QuantumNet::covariant_all_plus(s.clone());
        let line = Line::in_striation(&s, StriationLabel::Slope(1), s.omega_pow(2));
        let w = wigner_of_state(&net.line_state(&line).unwrap(), &net).unwrap();
        for pt in all_points(&s) {
            let expected = if line.contains(&s, pt) { 0.25 } else { 0.0 };
            assert!((w.get(pt) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn reconstruction_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=3 {
            let net = QuantumNet::covariant(spec(n), 0, 1, 0).unwrap();
            let rho = DensityMatrix::new(dense::random_density(&mut rng, 1 << n)).unwrap();
            let w = wigner_of(&rho, &net).unwrap();
            let back = reconstruct(&w, &net).unwrap();
            assert!(dense::max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
            let ops = PointOperators::new(&net).unwrap();
            let mut via_a = CMatrix::zeros(1 << n, 1 << n);
            for pt in all_points(net.spec()) {
                via_a += ops.at_point(pt) * Complex64::from(w.get(pt));
            }
            via_a *= Complex64::from(net.spec().size() as f64);
            assert!(dense::max_abs_diff(&via_a, rho.matrix()) < 1e-12);
        }
    }

    #[test]
    fn expectations_from_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let net = QuantumNet::covariant(spec(2), 3, 0, 2).unwrap();
        let rho = DensityMatrix::new(dense::random_density(&mut rng, 4)).unwrap();
        let w = wigner_of(&rho, &net).unwrap();
        for k in 0..16 {
            let beta = point_of_key(2, k);
            let t = PauliTranslation::from_point(2, beta);
            let e = expectation_translation(&w, &net, beta).unwrap();
            assert!((e - rho.expectation(&t).re).abs() < 1e-12);
        }
    }

    #[test]
    fn purity_identity_pure_vs_mixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let net = QuantumNet::all_plus(spec(2));
        let psi = dense::random_state(&mut rng, 4);
        let w = wigner_of_state(&psi, &net).unwrap();
        for k in 0..16 {
            let (l, r) = purity_identity_check(&w, point_of_key(2, k));
            assert!((l - r).abs() < 1e-12);
        }
        let (l, r) = purity_identity_check(&w, BinaryPoint::default());
        assert!((l - 1.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-12);
        let mixed = wigner_of(&DensityMatrix::maximally_mixed(2).unwrap(), &net).unwrap();
        let (l, r) = purity_identity_check(&mixed, BinaryPoint::new(1, 0));
        assert!(l.abs() < 1e-14);
        assert!((r - 0.25).abs() < 1e-14);
    }

    #[test]
    fn density_validation() {
        let bad = CMatrix::from_element(2, 2, dense::ONE);
        assert!(matches!(DensityMatrix::new(bad), Err(Error::InvalidDensityMatrix(_))));
        let neg = CMatrix::from_diagonal(&CVector::from_vec(vec![dense::ONE * 1.5, dense::ONE * -0.5]));
        assert!(matches!(DensityMatrix::new(neg), Err(Error::InvalidDensityMatrix(_))));
        assert!(DensityMatrix::new(CMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn stabilizer_group_expansion() {
        let gens: Vec<PauliTranslation> = ["+XX", "+ZZ"].iter().map(|s| s.parse().unwrap()).collect();
        let g = StabilizerGroup::from_generators(&gens).unwrap();
        assert_eq!(g.sign(BinaryPoint::new(0b11, 0b11)), Some(-1));
        assert_eq!(g.generators().len(), 2);
        let bad: Vec<PauliTranslation> = ["+XI", "+ZI"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(StabilizerGroup::from_generators(&bad), Err(Error::NonCommutingGenerators));
        let dep: Vec<PauliTranslation> = ["+XX", "-XX"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(matches!(StabilizerGroup::from_generators(&dep), Err(Error::InconsistentStabilizer(_))));
        let short: Vec<PauliTranslation> = ["+XX"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(StabilizerGroup::from_generators(&short).is_err());
        let members: BTreeMap<_, _> = g.members().collect();
        assert_eq!(StabilizerGroup::from_members(2, members.clone()).unwrap(), g);
        let mut broken = members;
        broken.insert(BinaryPoint::new(0b11, 0b11), 1);
        assert!(StabilizerGroup::from_members(2, broken).is_err());
    }

    #[test]
    fn stabilizer_counts() {
        assert_eq!(StabilizerGroup::all(1).unwrap().len(), 6);
        assert_eq!(StabilizerGroup::all(2).unwrap().len(), 60);
    }

    #[test]
    fn stabilizer_formula_matches_dense() {
        let net = QuantumNet::covariant(spec(2), 1, 2, 3).unwrap();
        for group in StabilizerGroup::all(2).unwrap() {
            let exact = stabilizer_wigner(&group, &net).unwrap();
            let dense_grid = wigner_of(&DensityMatrix::new(group.projector().unwrap()).unwrap(), &net).unwrap();
            assert_eq!(dense_grid.rationalize(16, 1e-10).unwrap(), match exact.values() {
                GridValues::Exact(v) => v.clone(),
                _ => unreachable!(),
            });
            for pt in all_points(net.spec()) {
                assert_eq!(stabilizer_wigner_at(&group, &net, pt).unwrap(), exact.get_exact(pt).unwrap());
            }
        }
    }

    #[test]
    fn aligned_net_gives_indicator() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=4 {
            let s = spec(n);
            let group = StabilizerGroup::random(&mut rng, n).unwrap();
            let net = aligned_net(&group, s.clone()).unwrap();
            let w = stabilizer_wigner(&group, &net).unwrap();
            let one_over_n = Rational::new(1, s.size() as i64);
            for pt in all_points(&s) {
                let inside = group.sign(pt.to_binary(&s)).is_some();
                let expected = if inside { one_over_n } else { Rational::zero() };
                assert_eq!(w.get_exact(pt).unwrap(), expected);
            }
        }
    }

    #[test]
    fn large_n_single_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = spec(12);
        let group = StabilizerGroup::random(&mut rng, 12).unwrap();
        let net = aligned_net(&group, s.clone()).unwrap();
        let w0 = stabilizer_wigner_at(&group, &net, PhasePoint::ORIGIN).unwrap();
        assert_eq!(w0, Rational::new(1, 4096));
        assert!(stabilizer_wigner(&group, &net).is_err());
    }

    #[test]
    fn triple_product_and_inverse_transform() {
        let net = QuantumNet::covariant_all_plus(spec(2));
        let ops = PointOperators::new(&net).unwrap();
        let a = BinaryPoint::new(1, 2);
        let b = BinaryPoint::new(3, 0);
        let c = BinaryPoint::new(2, 3);
        let t1 = ops.triple_product(a, b, c);
        let t2 = ops.triple_product(b, c, a);
        assert!((t1 - t2).norm() < 1e-14);
        // pure states satisfy W(a) = N^2 sum_{b,c} Tr(A_a A_b A_c) W(b) W(c)
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = wigner_of_state(&dense::random_state(&mut rng, 4), &net).unwrap();
        let pts: Vec<_> = (0..16).map(|k| point_of_key(2, k)).collect();
        for &x in &pts {
            let mut acc = dense::ZERO;
            for &y in &pts {
                for &z in &pts {
                    acc += ops.triple_product(x, y, z) * (w.get_binary(y) * w.get_binary(z));
                }
            }
            acc *= Complex64::from(16.0);
            assert!((acc.re - w.get_binary(x)).abs() < 1e-12 && acc.im.abs() < 1e-12);
        }
        for k in 0..16 {
            let beta = point_of_key(2, k);
            let t = PauliTranslation::from_point(2, beta).to_matrix().unwrap();
            assert!(dense::max_abs_diff(&ops.translation_from_a(beta), &t) < 1e-12);
        }
    }
}
