//! Mean king retrodiction with two qubits.
//!
//! The physicist entangles the system (qubit 0) with an ancilla (qubit 1) in
//! `|Phi+>`; the king measures `X`, `Y` or `Z` on the system; the physicist
//! then measures a basis `phi_1..phi_4` chosen so that each outcome, once
//! the observable is announced, pins down the king's result.
//!
//! `phi_1` is orthogonal to the states of three lines `v1: q = w^2`,
//! `h1: p = w^2`, `d1: p = q + w^2`, one per striation, and the other basis
//! states are its `Z0Z1`, `Y0Y1`, `X0X1` translates.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bell::BellKind;
use super::{exact_values, require_n};
use crate::dense::{self, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::galois::{FieldElement, FieldSpec};
use crate::net::QuantumNet;
use crate::pauli::{Gate, PauliTranslation};
use crate::phasespace::{Line, PhasePoint, Striation, StriationLabel};
use crate::wigner::{self, Rational, WignerGrid};

pub const OBSERVABLES: [char; 3] = ['X', 'Y', 'Z'];

/// Translations taking `phi_1` to `phi_2, phi_3, phi_4`.
pub fn basis_translations() -> [PauliTranslation; 3] {
    ["ZZ", "YY", "XX"].map(|s| s.parse().expect("valid Pauli string"))
}

/// The lines `v1`, `h1`, `d1` whose states `phi_1` must avoid.
pub fn constraint_lines(spec: &FieldSpec) -> Result<[Line; 3]> {
    require_n(spec, 2)?;
    let w2 = spec.omega_pow(2);
    Ok([
        Line::in_striation(spec, StriationLabel::V, w2),
        Line::in_striation(spec, StriationLabel::H, w2),
        Line::through(spec, StriationLabel::Slope(0), PhasePoint::new(FieldElement::ZERO, w2)),
    ])
}

/// The rays `v2`, `h2`, `d2` of the same striations.
pub fn ray_lines(spec: &FieldSpec) -> [Line; 3] {
    [StriationLabel::V, StriationLabel::H, StriationLabel::Slope(0)].map(|l| Line::ray(spec, l))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KingSolution {
    pub basis: [CVector; 4],
    /// `(observable, physicist outcome)` to the king's inferred result,
    /// `0` for the `+1` eigenvalue and `1` for `-1`.
    pub table: BTreeMap<(char, usize), usize>,
}

/// Unit vector orthogonal to the given states (4-dimensional space, three
/// constraints).
fn complement(states: &[CVector]) -> Result<CVector> {
    let mut ortho: Vec<CVector> = Vec::new();
    for s in states {
        let mut v = s.clone();
        for u in &ortho {
            v -= u * dense::inner(u, &v);
        }
        let norm = v.norm();
        if norm < 1e-9 {
            return Err(Error::DegenerateConstraints);
        }
        ortho.push(v / Complex64::from(norm));
    }
    let dim = states[0].len();
    let best = (0..dim)
        .map(|k| {
            let mut v = dense::basis_state(dim, k);
            for u in &ortho {
                v -= u * dense::inner(u, &v);
            }
            v
        })
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("nonempty space");
    Ok(dense::fix_phase(&(best.clone() / Complex64::from(best.norm()))))
}

pub fn phi1(net: &QuantumNet) -> Result<CVector> {
    let spec = net.spec();
    let states = constraint_lines(spec)?
        .iter()
        .map(|l| net.line_state(l))
        .collect::<Result<Vec<_>>>()?;
    complement(&states)
}

/// Projector of the king's outcome `k` (0 for `+1`) for an observable on
/// qubit 0.
fn king_projector(observable: char, outcome: usize) -> Result<CMatrix> {
    let single: PauliTranslation = format!("{observable}I").parse()?;
    let m = single.to_matrix()?;
    let sign = if outcome == 0 { 1.0 } else { -1.0 };
    Ok((dense::identity(4) + m * Complex64::from(sign)) * Complex64::from(0.5))
}

/// Probability of the physicist finding `phi_i` after the king saw `outcome`.
fn branch_probability(phi: &CVector, observable: char, outcome: usize) -> Result<f64> {
    let after = king_projector(observable, outcome)? * BellKind::PhiPlus.state();
    Ok(dense::inner(phi, &after).norm_sqr())
}

impl KingSolution {
    /// Build the retrodiction table for any basis; fails if some result is
    /// compatible with both king outcomes.
    pub fn from_basis(basis: [CVector; 4]) -> Result<Self> {
        let mut table = BTreeMap::new();
        for obs in OBSERVABLES {
            for (i, phi) in basis.iter().enumerate() {
                let consistent: Vec<usize> = (0..2)
                    .map(|k| branch_probability(phi, obs, k).map(|p| (k, p)))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .filter(|&(_, p)| p > 1e-12)
                    .map(|(k, _)| k)
                    .collect();
                match consistent.as_slice() {
                    [k] => {
                        table.insert((obs, i), *k);
                    }
                    [] => {}
                    _ => return Err(Error::AmbiguousInference { observable: obs, outcome: i }),
                }
            }
        }
        Ok(KingSolution { basis, table })
    }

    pub fn gram_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let target = if i == j { Complex64::from(1.0) } else { Complex64::zero() };
                worst = worst.max((dense::inner(a, b) - target).norm());
            }
        }
        worst
    }
}

/// Construct `phi_1..phi_4` and the retrodiction table.
pub fn mean_king_solve(net: &QuantumNet) -> Result<KingSolution> {
    require_n(net.spec(), 2)?;
    let p1 = phi1(net)?;
    let [t2, t3, t4] = basis_translations();
    let basis = [p1.clone(), t2.apply(&p1), t3.apply(&p1), t4.apply(&p1)];
    let solution = KingSolution::from_basis(basis)?;
    if solution.gram_deviation() > 1e-10 {
        return Err(Error::DegenerateConstraints);
    }
    Ok(solution)
}

/// `1 - |<phi| S H H |phi>|`: zero when `phi` is invariant (up to phase)
/// under Hadamards on both qubits followed by a swap.
pub fn swap_hadamard_defect(phi: &CVector) -> Result<f64> {
    let u = crate::pauli::circuit_matrix(2, &[Gate::H(0), Gate::H(1), Gate::Swap(0, 1)])?;
    Ok(1.0 - dense::inner(phi, &(u * phi)).norm())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    /// Branches with nonzero probability.
    pub branches: usize,
    pub success_probability: f64,
    /// Success per announced observable.
    pub per_observable: BTreeMap<char, f64>,
}

/// Walk every (observable, king outcome, physicist outcome) branch and add
/// the probability of a correct inference. The king's choice of observable
/// is uniform.
pub fn mean_king_simulate(solution: &KingSolution) -> Result<SimulationReport> {
    let mut branches = 0;
    let mut per_observable = BTreeMap::new();
    for obs in OBSERVABLES {
        let mut success = 0.0;
        for k in 0..2 {
            for (i, phi) in solution.basis.iter().enumerate() {
                let p = branch_probability(phi, obs, k)?;
                if p <= 1e-12 {
                    continue;
                }
                branches += 1;
                match solution.table.get(&(obs, i)) {
                    Some(&guess) if guess == k => success += p,
                    Some(_) => {}
                    None => return Err(Error::AmbiguousInference { observable: obs, outcome: i }),
                }
            }
        }
        per_observable.insert(obs, success);
    }
    let success_probability = per_observable.values().sum::<f64>() / OBSERVABLES.len() as f64;
    Ok(SimulationReport { branches, success_probability, per_observable })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineSums {
    /// Sums along `v1, h1, d1`.
    pub zero_lines: [Rational; 3],
    /// Sums along the rays `v2, h2, d2`.
    pub rays: [Rational; 3],
    /// Combined sums of the two remaining lines of the v, h and slope-0
    /// striations.
    pub remaining: [Rational; 3],
}

pub fn line_sums(grid: &WignerGrid) -> Result<LineSums> {
    let spec = grid.spec();
    require_n(spec, 2)?;
    let values = exact_values(grid, 16)?;
    let sum = |l: &Line| l.points(spec).iter().map(|pt| values[pt.grid_index(spec)]).sum::<Rational>();
    let zero = constraint_lines(spec)?;
    let rays = ray_lines(spec);
    let remaining: Vec<Rational> = zero
        .iter()
        .zip(rays.iter())
        .map(|(z, r)| {
            Striation::new(spec, z.label(spec))
                .lines
                .iter()
                .filter(|l| *l != z && *l != r)
                .map(sum)
                .sum()
        })
        .collect();
    Ok(LineSums {
        zero_lines: zero.each_ref().map(sum),
        rays: rays.each_ref().map(sum),
        remaining: remaining.try_into().expect("three striations"),
    })
}

pub fn phi1_wigner(net: &QuantumNet) -> Result<WignerGrid> {
    wigner::wigner_of_state(&phi1(net)?, net)
}

/// One group of the printed caption next to the values found on the grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaptionEntry {
    pub labels: String,
    pub printed: Rational,
    pub derived: Rational,
    pub consistent: bool,
}

/// The caption lists four parameters at `3/16`, three at `1/6` and three at
/// `-1/16` for a grid symmetric about the main diagonal. The ten distinct
/// cells of such a grid are the `(q, p)` pairs with `q <= p` in axis order.
/// Groups are matched by multiplicity: each printed group is paired with the
/// derived value of the same multiplicity, preferring an equal value.
pub fn caption_comparison(grid: &WignerGrid) -> Result<Vec<CaptionEntry>> {
    let spec = grid.spec();
    require_n(spec, 2)?;
    let values = exact_values(grid, 16)?;
    let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
    for qi in 0..4 {
        for pi in qi..4 {
            *counts.entry(values[qi * 4 + pi]).or_default() += 1;
        }
    }
    let printed = [
        ("a,e,d,h", Rational::new(3, 16), 4),
        ("b,c,f", Rational::new(1, 6), 3),
        ("j,i,g", Rational::new(-1, 16), 3),
    ];
    let mut used: Vec<Rational> = Vec::new();
    let mut out = Vec::new();
    // exact matches first, then the leftovers by multiplicity
    for pass in 0..2 {
        for (labels, value, mult) in printed {
            if out.iter().any(|e: &CaptionEntry| e.labels == labels) {
                continue;
            }
            let pick = counts
                .iter()
                .filter(|(v, &c)| c == mult && !used.contains(v))
                .map(|(v, _)| *v)
                .find(|v| pass == 1 || *v == value);
            if let Some(d) = pick {
                used.push(d);
                out.push(CaptionEntry { labels: labels.to_string(), printed: value, derived: d, consistent: d == value });
            }
        }
    }
    if out.len() != printed.len() {
        return Err(Error::PatternMismatch("grid does not split into groups of 4, 3 and 3".into()));
    }
    out.sort_by_key(|e| printed.iter().position(|p| p.0 == e.labels));
    Ok(out)
}

/// Largest `|W(q, p) - W(p, q)|`, with `q` and `p` compared as field labels.
pub fn reflection_defect(grid: &WignerGrid) -> f64 {
    let spec = grid.spec();
    let size = spec.size();
    let mut worst: f64 = 0.0;
    for qi in 0..size {
        for pi in 0..size {
            worst = worst.max((grid.get_index(qi * size + pi) - grid.get_index(pi * size + qi)).abs());
        }
    }
    worst
}

/// The net used for the construction.
pub fn preset_net(spec: Arc<FieldSpec>) -> Result<QuantumNet> {
    crate::net::preset("meanking", spec)
}
