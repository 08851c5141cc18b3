//! The three-qubit phase-error code `|0_L> = (|000> + |011> + |101> + |110>)/2`,
//! stabilized by `S1 = X0 X1` and `S2 = X1 X2`, with logical `Z_L = Z0 Z1 Z2`.
//!
//! Over GF(8) with `x^3 + x^2 + 1`, the grid of a code state is constant on
//! the column classes `A = {0, w^3, w^5, w^6}` and `B = {1, w, w^2, w^4}`.
//! Rows pair up as `R0 = {0, w^3}`, `R1 = {1, w^2}`, `R2 = {w, w^4}` and
//! `R3 = {w^5, w^6}`, giving eight parameters
//! `a..h = (A,R0) (B,R0) (A,R2) (B,R2) (A,R1) (B,R1) (A,R3) (B,R3)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{collapse, exact_values, require_n};
use crate::dense::{self, CVector};
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::net::{QuantumNet, Signs};
use crate::pauli::PauliTranslation;
use crate::phasespace::{all_points, all_striations, BinaryPoint, PhasePoint};
use crate::wigner::{self, GridValues, Rational, WignerGrid};

pub const PARAM_NAMES: [char; 8] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

pub fn s1() -> PauliTranslation {
    PauliTranslation::new(3, 0b011, 0)
}

pub fn s2() -> PauliTranslation {
    PauliTranslation::new(3, 0b110, 0)
}

pub fn logical_z() -> PauliTranslation {
    PauliTranslation::new(3, 0, 0b111)
}

pub fn logical_x() -> PauliTranslation {
    PauliTranslation::new(3, 0b001, 0)
}

/// Single-qubit phase errors `Z0, Z1, Z2`.
pub fn phase_errors() -> [PauliTranslation; 3] {
    [0, 1, 2].map(|q| PauliTranslation::new(3, 0, 1 << q))
}

pub fn logical_zero() -> CVector {
    let mut v = CVector::zeros(8);
    for i in [0b000, 0b011, 0b101, 0b110] {
        v[i] = Complex64::from(0.5);
    }
    v
}

pub fn logical_one() -> CVector {
    logical_x().apply(&logical_zero())
}

/// `alpha |0_L> + beta |1_L>`, normalized.
pub fn code_state(alpha: Complex64, beta: Complex64) -> Result<CVector> {
    let v = logical_zero() * alpha + logical_one() * beta;
    let norm = v.norm();
    if norm < 1e-12 {
        return Err(Error::InvalidDensityMatrix("zero logical amplitudes".into()));
    }
    Ok(v / Complex64::from(norm))
}

pub fn code_wigner(alpha: Complex64, beta: Complex64, net: &QuantumNet) -> Result<WignerGrid> {
    require_n(net.spec(), 3)?;
    wigner::wigner_of_state(&code_state(alpha, beta)?, net)
}

/// Axis indices of `{0, w^e : e in exps}`-style sets; `None` stands for 0.
fn axis_set(spec: &FieldSpec, exps: &[Option<i64>]) -> Vec<usize> {
    exps.iter()
        .map(|e| match e {
            None => 0,
            Some(k) => spec.index_of(spec.omega_pow(*k)),
        })
        .collect()
}

/// Parameter index of every cell, `[qi][pi]`.
fn layout(spec: &FieldSpec) -> Vec<Vec<usize>> {
    let class_a = axis_set(spec, &[None, Some(3), Some(5), Some(6)]);
    let rows = [
        axis_set(spec, &[None, Some(3)]),
        axis_set(spec, &[Some(0), Some(2)]),
        axis_set(spec, &[Some(1), Some(4)]),
        axis_set(spec, &[Some(5), Some(6)]),
    ];
    // row class R0, R1, R2, R3 -> parameter pair (a,b), (e,f), (c,d), (g,h)
    let row_base = [0, 4, 2, 6];
    (0..8)
        .map(|qi| {
            let col = usize::from(!class_a.contains(&qi));
            (0..8)
                .map(|pi| {
                    let r = rows.iter().position(|r| r.contains(&pi)).expect("rows cover the axis");
                    row_base[r] + col
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodeParams(pub [Rational; 8]);

impl CodeParams {
    pub fn get(&self, name: char) -> Option<Rational> {
        PARAM_NAMES.iter().position(|&c| c == name).map(|i| self.0[i])
    }

    /// From the four values `a, c, e, g` with `b = 1/8 - a`, `d = -c`,
    /// `f = -e`, `h = -g`.
    pub fn from_aceg(a: Rational, c: Rational, e: Rational, g: Rational) -> Self {
        CodeParams([a, Rational::new(1, 8) - a, c, -c, e, -e, g, -g])
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in PARAM_NAMES.iter().zip(self.0.iter()).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{name}={v}")?;
        }
        Ok(())
    }
}

/// Read the eight parameters off an `n = 3` grid.
pub fn code_params(grid: &WignerGrid) -> Result<CodeParams> {
    require_n(grid.spec(), 3)?;
    let values = match grid.values() {
        GridValues::Exact(v) => v.clone(),
        GridValues::Dense(_) => exact_values(grid, 64)?,
    };
    let cells = layout(grid.spec());
    let p = collapse(grid.spec(), &values, 8, |qi, pi| cells[qi][pi])?;
    Ok(CodeParams(p.try_into().expect("eight parameters")))
}

/// Expand parameters into a full exact grid.
pub fn params_grid(spec: Arc<FieldSpec>, params: &CodeParams, fingerprint: String) -> Result<WignerGrid> {
    require_n(&spec, 3)?;
    let cells = layout(&spec);
    let values = (0..64).map(|i| params.0[cells[i / 8][i % 8]]).collect();
    WignerGrid::new(spec, GridValues::Exact(values), fingerprint)
}

fn f_parts(alpha: Complex64, beta: Complex64) -> (f64, f64, f64, f64) {
    let a2 = alpha.norm_sqr();
    let b2 = beta.norm_sqr();
    let ab = alpha * beta.conj();
    let cross = (Complex64::new(2.0, 1.0) * ab + Complex64::new(2.0, -1.0) * ab.conj()).re;
    let skew = (Complex64::i() * (ab - ab.conj())).re;
    (a2, b2, cross, skew)
}

pub fn f1(alpha: Complex64, beta: Complex64) -> f64 {
    let (a2, b2, cross, _) = f_parts(alpha, beta);
    (a2 + 3.0 * b2 + cross) / 32.0
}

pub fn f2(alpha: Complex64, beta: Complex64) -> f64 {
    let (a2, b2, _, skew) = f_parts(alpha, beta);
    (a2 - b2 + skew) / 32.0
}

pub fn f3(alpha: Complex64, beta: Complex64) -> f64 {
    let (a2, b2, _, skew) = f_parts(alpha, beta);
    (a2 - b2 - skew) / 32.0
}

pub fn f4(alpha: Complex64, beta: Complex64) -> f64 {
    let (a2, b2, cross, _) = f_parts(alpha, beta);
    (a2 + 3.0 * b2 - cross) / 32.0
}

/// Which of `f1..f4` sits at each `p` (axis order) of the `q = 0` column.
/// The `q = 1` column uses the same functions with `alpha` and `beta`
/// exchanged.
pub const COLUMN_PATTERN: [usize; 8] = [1, 2, 3, 3, 4, 2, 2, 3];

/// The printed values of the first two columns, `[q = 0, q = 1][p index]`.
pub fn printed_columns(alpha: Complex64, beta: Complex64) -> [[f64; 8]; 2] {
    let eval = |k: usize, x: Complex64, y: Complex64| match k {
        1 => f1(x, y),
        2 => f2(x, y),
        3 => f3(x, y),
        _ => f4(x, y),
    };
    [
        COLUMN_PATTERN.map(|k| eval(k, alpha, beta)),
        COLUMN_PATTERN.map(|k| eval(k, beta, alpha)),
    ]
}

/// Largest gap between the grid's `q = 0, 1` columns and the printed ones.
pub fn printed_column_deviation(grid: &WignerGrid, alpha: Complex64, beta: Complex64) -> Result<f64> {
    require_n(grid.spec(), 3)?;
    // the formulas assume normalized amplitudes
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    let cols = printed_columns(alpha / norm, beta / norm);
    let mut worst: f64 = 0.0;
    for (qi, col) in cols.iter().enumerate() {
        for (pi, &v) in col.iter().enumerate() {
            worst = worst.max((grid.get_index(qi * 8 + pi) - v).abs());
        }
    }
    Ok(worst)
}

/// Largest spread within the column classes `A` and `B`.
pub fn column_identification_deviation(grid: &WignerGrid) -> f64 {
    let spec = grid.spec();
    let cells = layout(spec);
    let mut worst: f64 = 0.0;
    for qi in 0..8 {
        let rep = if cells[qi][0] % 2 == 0 { 0 } else { 1 };
        for pi in 0..8 {
            worst = worst.max((grid.get_index(qi * 8 + pi) - grid.get_index(rep * 8 + pi)).abs());
        }
    }
    worst
}

/// Largest spread within the row pairs `R0..R3`; zero for logical basis
/// states.
pub fn row_identification_deviation(grid: &WignerGrid) -> f64 {
    let spec = grid.spec();
    let pairs = [[None, Some(3)], [Some(0), Some(2)], [Some(1), Some(4)], [Some(5), Some(6)]];
    let mut worst: f64 = 0.0;
    for pair in pairs {
        let idx = axis_set(spec, &pair);
        for qi in 0..8 {
            worst = worst.max((grid.get_index(qi * 8 + idx[0]) - grid.get_index(qi * 8 + idx[1])).abs());
        }
    }
    worst
}

/// `sum_a W(a) W(a + e)` for each phase error `e`.
pub fn error_overlaps(grid: &WignerGrid) -> [f64; 3] {
    phase_errors().map(|e| grid.shifted_overlap(e.point()))
}

/// The constraints on `(a..h)` for `|0_L>`, in terms of the parameter vector
/// `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeConstraints {
    /// `row . x = rhs`: normalization and the `S1`, `S2`, `Z_L` eigenvalues.
    pub linear: Vec<([Rational; 8], Rational)>,
    /// `x^T Q x = 0`: orthogonality to the `Z0, Z1, Z2` translates.
    pub orthogonality: Vec<[[i64; 8]; 8]>,
    /// Cells per parameter; purity is `sum_k weights_k x_k^2 = 1/N`.
    pub weights: [i64; 8],
    /// Cells of each parameter on every line; each line sum must be `>= 0`.
    pub lines: Vec<[i64; 8]>,
}

pub fn code_constraints(net: &QuantumNet) -> Result<CodeConstraints> {
    let spec = net.spec();
    require_n(spec, 3)?;
    let cells = layout(spec);
    let param_of = |pt: PhasePoint| {
        let i = pt.grid_index(spec);
        cells[i / 8][i % 8]
    };
    let mut weights = [0i64; 8];
    for pt in all_points(spec) {
        weights[param_of(pt)] += 1;
    }

    let mut linear = Vec::new();
    let betas = [BinaryPoint::new(0, 0), s1().point(), s2().point(), logical_z().point()];
    for beta in betas {
        let mut row = [Rational::zero(); 8];
        for pt in all_points(spec) {
            let sign = if crate::phasespace::wedge(pt.to_binary(spec), beta) == 1 { -1 } else { 1 };
            row[param_of(pt)] += Rational::from(sign);
        }
        // sum_a W(a) (-1)^{a ^ b} = f_b <T_b>, and <T_b> = +1 on |0_L>
        let rhs = if beta.is_zero() { 1 } else { net.f(beta) as i64 };
        linear.push((row, Rational::from(rhs)));
    }

    let orthogonality = phase_errors()
        .iter()
        .map(|e| {
            let mut q = [[0i64; 8]; 8];
            for pt in all_points(spec) {
                let moved = (pt.to_binary(spec) + e.point()).to_point(spec);
                q[param_of(pt)][param_of(moved)] += 1;
            }
            q
        })
        .collect();

    let mut lines = Vec::new();
    for striation in all_striations(spec) {
        for line in &striation.lines {
            let mut row = [0i64; 8];
            for pt in line.points(spec) {
                row[param_of(pt)] += 1;
            }
            lines.push(row);
        }
    }
    Ok(CodeConstraints { linear, orthogonality, weights, lines })
}

/// Reduced row echelon form of the linear system; returns the pivot columns.
fn rref(rows: &mut Vec<([Rational; 8], Rational)>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..8 {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let lead = rows[r].0[col];
        for k in 0..8 {
            rows[r].0[k] /= lead;
        }
        rows[r].1 /= lead;
        for i in 0..rows.len() {
            if i != r && !rows[i].0[col].is_zero() {
                let factor = rows[i].0[col];
                for k in 0..8 {
                    let delta = factor * rows[r].0[k];
                    rows[i].0[k] -= delta;
                }
                let delta = factor * rows[r].1;
                rows[i].1 -= delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Every parameter vector on the lattice `(1/denominator) Z^8` meeting all
/// the constraints. Purity bounds each coordinate, so the search is finite.
pub fn solve_constraints(cons: &CodeConstraints, denominator: i64) -> Result<Vec<CodeParams>> {
    let mut rows = cons.linear.clone();
    let pivots = rref(&mut rows);
    if rows.iter().any(|(row, rhs)| row.iter().all(|x| x.is_zero()) && !rhs.is_zero()) {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..8).filter(|c| !pivots.contains(c)).collect();
    // purity in lattice units: sum w_k m_k^2 = denominator^2 / N
    let d2 = denominator * denominator;
    if d2 % 8 != 0 {
        return Err(Error::Format(format!("lattice 1/{denominator} cannot meet purity 1/8")));
    }
    let purity = d2 / 8;
    let bound = |k: usize| ((purity as f64 / cons.weights[k] as f64).sqrt().floor()) as i64;

    let mut found = Vec::new();
    let mut m = [0i64; 8];
    let ranges: Vec<i64> = free.iter().map(|&k| bound(k)).collect();
    let mut counter: Vec<i64> = ranges.iter().map(|&b| -b).collect();
    'outer: loop {
        for (slot, &k) in free.iter().enumerate() {
            m[k] = counter[slot];
        }
        let mut ok = true;
        for (row, &pcol) in rows.iter().zip(pivots.iter()) {
            // x_p = rhs - sum_free row_f x_f, in lattice units
            let mut value = row.1 * Rational::from(denominator);
            for &k in &free {
                value -= row.0[k] * Rational::from(m[k]);
            }
            if !value.is_integer() || value.abs() > Rational::from(bound(pcol)) {
                ok = false;
                break;
            }
            m[pcol] = value.to_integer();
        }
        if ok && accepts(cons, &m, purity) {
            found.push(CodeParams(m.map(|v| Rational::new(v, denominator))));
        }
        // advance the odometer
        for slot in 0..counter.len() {
            if counter[slot] < ranges[slot] {
                counter[slot] += 1;
                continue 'outer;
            }
            counter[slot] = -ranges[slot];
        }
        break;
    }
    found.sort_by(|x, y| y.cmp(x));
    Ok(found)
}

fn accepts(cons: &CodeConstraints, m: &[i64; 8], purity: i64) -> bool {
    let norm: i64 = (0..8).map(|k| cons.weights[k] * m[k] * m[k]).sum();
    if norm != purity {
        return false;
    }
    for q in &cons.orthogonality {
        let v: i64 = (0..8).flat_map(|i| (0..8).map(move |j| (i, j))).map(|(i, j)| q[i][j] * m[i] * m[j]).sum();
        if v != 0 {
            return false;
        }
    }
    cons.lines.iter().all(|row| (0..8).map(|k| row[k] * m[k]).sum::<i64>() >= 0)
}

/// All pure-state parameter grids for `|0_L>` with values in `(1/64) Z`.
pub fn code_solution_family(net: &QuantumNet) -> Result<Vec<CodeParams>> {
    solve_constraints(&code_constraints(net)?, 64)
}

/// Parameters of `W(|0_L>)` under each covariant net whose h and v rays are
/// all-(+1), keyed by the slope-0 generator signs.
pub fn covariant_realizations(spec: Arc<FieldSpec>) -> Result<Vec<(Signs, CodeParams)>> {
    require_n(&spec, 3)?;
    (0..8)
        .map(|s| {
            let net = QuantumNet::covariant(spec.clone(), 0, 0, s)?;
            let grid = wigner::wigner_of_state(&logical_zero(), &net)?;
            Ok((s, code_params(&grid)?))
        })
        .collect()
}

/// Members of `family` that some covariant net realizes.
pub fn covariant_solutions(family: &[CodeParams], spec: Arc<FieldSpec>) -> Result<Vec<CodeParams>> {
    let realized: Vec<CodeParams> = covariant_realizations(spec)?.into_iter().map(|(_, p)| p).collect();
    Ok(family.iter().copied().filter(|p| realized.contains(p)).collect())
}

/// Dense `|0_L>` projector sanity: `<S1> = <S2> = <Z_L> = 1`.
pub fn logical_zero_expectations() -> [f64; 3] {
    let v = logical_zero();
    [s1(), s2(), logical_z()].map(|t| dense::inner(&v, &t.apply(&v)).re)
}
