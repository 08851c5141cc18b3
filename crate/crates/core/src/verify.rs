//! Invariant suite behind `verify`: one named property per check, with the
//! worst deviation seen. Checks that need dense matrices run only for small
//! `n`; the rest run for every supported size.

use std::collections::HashSet;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::apps::{bell, king, qec};
use crate::dense::{self, CMatrix};
use crate::error::Result;
use crate::galois::{FieldElement, FieldSpec, Generator};
use crate::net::{self, QuantumNet};
use crate::pauli::{self, PauliTranslation};
use crate::phasespace::{self, all_points, all_striations, intersect, BinaryPoint, Intersection, Line, StriationLabel};
use crate::wigner::{self, DensityMatrix, PointOperators, Rational, StabilizerGroup};

pub const TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    results: Vec<PropertyResult>,
}

impl Suite {
    /// `check` returns `Ok(None)` on success or a description of the failure.
    fn run<F>(&mut self, name: &str, check: F)
    where
        F: FnOnce() -> Result<Option<String>>,
    {
        let (passed, detail) = match check() {
            Ok(None) => (true, "ok".to_string()),
            Ok(Some(why)) => (false, why),
            Err(e) => (false, format!("error: {e}")),
        };
        self.results.push(PropertyResult { name: name.to_string(), passed, detail });
    }
}

fn fail_if(bad: bool, why: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok(if bad { Some(why()) } else { None })
}

fn within(dev: f64, tol: f64) -> Result<Option<String>> {
    fail_if(!(dev < tol), || format!("deviation {dev:.3e} exceeds {tol:.0e}"))
}

/// Pairs of field elements: all of them for `n <= 4`, a sample otherwise.
fn element_pairs(spec: &FieldSpec, rng: &mut StdRng) -> Vec<(FieldElement, FieldElement)> {
    let size = spec.size() as u32;
    if spec.n() <= 4 {
        (0..size).flat_map(|x| (0..size).map(move |y| (x, y))).map(|(x, y)| (el(x), el(y))).collect()
    } else {
        (0..2000).map(|_| (el(rng.gen_range(0..size)), el(rng.gen_range(0..size)))).collect()
    }
}

fn el(bits: u32) -> FieldElement {
    FieldElement::from_bits(bits)
}

fn random_points(n: usize, rng: &mut StdRng, count: usize) -> Vec<BinaryPoint> {
    let mask = (1u32 << n) - 1;
    if n <= 3 {
        (0..1u32 << (2 * n)).map(|k| BinaryPoint::new(k >> n, k & mask)).collect()
    } else {
        (0..count).map(|_| BinaryPoint::new(rng.gen::<u32>() & mask, rng.gen::<u32>() & mask)).collect()
    }
}

fn galois_checks(s: &mut Suite, spec: &FieldSpec, rng: &mut StdRng) {
    let pairs = element_pairs(spec, rng);
    s.run("galois.frobenius", || {
        let bad = pairs.iter().find(|&&(x, y)| {
            let sum = spec.add(x, y);
            spec.mul(sum, sum) != spec.add(spec.mul(x, x), spec.mul(y, y))
        });
        fail_if(bad.is_some(), || format!("(x+y)^2 != x^2+y^2 at {bad:?}"))
    });
    s.run("galois.mul_matches_companion", || {
        let bad = pairs
            .iter()
            .find(|&&(x, y)| spec.matrix_of(spec.mul(x, y)) != spec.matrix_of(x).mul(&spec.matrix_of(y)));
        fail_if(bad.is_some(), || format!("mismatch at {bad:?}"))
    });
    s.run("galois.trace_linear_surjective", || {
        let linear = pairs.iter().all(|&(x, y)| spec.trace(spec.add(x, y)) == spec.trace(x) ^ spec.trace(y));
        let onto = spec.elements().any(|x| spec.trace(x) == 1);
        fail_if(!(linear && onto), || format!("linear: {linear}, surjective: {onto}"))
    });
    s.run("galois.dual_involution", || {
        for _ in 0..20 {
            let basis: Vec<FieldElement> = loop {
                let b: Vec<u32> = (0..spec.n()).map(|_| rng.gen_range(1..spec.size() as u32)).collect();
                if crate::gf2::rank_of(&b) == spec.n() {
                    break b.into_iter().map(el).collect();
                }
            };
            let back = spec.dual_basis(&spec.dual_basis(&basis)?)?;
            if back != basis {
                return Ok(Some(format!("dual of dual differs for {basis:?}")));
            }
        }
        Ok(None)
    });
    s.run("galois.power_ordering_cycle", || {
        for which in [Generator::Companion, Generator::Transpose] {
            let cycle = spec.power_ordering(which, 1)?;
            let distinct: HashSet<u32> = cycle.iter().copied().collect();
            if cycle.len() != spec.group_order() || distinct.len() != cycle.len() || distinct.contains(&0) {
                return Ok(Some(format!("{which:?} cycle does not visit every nonzero string once")));
            }
        }
        Ok(None)
    });
}

fn geometry_checks(s: &mut Suite, spec: &FieldSpec, rng: &mut StdRng) {
    let n = spec.n();
    if n <= 5 {
        s.run("phasespace.striations_partition", || {
            let total = spec.size() * spec.size();
            for st in all_striations(spec) {
                let mut seen = vec![false; total];
                for line in &st.lines {
                    for pt in line.points(spec) {
                        let i = pt.grid_index(spec);
                        if seen[i] {
                            return Ok(Some(format!("striation {} covers a point twice", st.label)));
                        }
                        seen[i] = true;
                    }
                }
                if seen.iter().any(|&x| !x) {
                    return Ok(Some(format!("striation {} misses a point", st.label)));
                }
            }
            Ok(None)
        });
    }
    if n <= 4 {
        s.run("phasespace.lines_meet_once", || {
            let lines: Vec<Line> = all_striations(spec).into_iter().flat_map(|st| st.lines).collect();
            for (i, a) in lines.iter().enumerate() {
                for b in &lines[i + 1..] {
                    let same = a.label(spec) == b.label(spec);
                    let ok = match intersect(spec, a, b) {
                        Intersection::Point(pt) => !same && a.contains(spec, pt) && b.contains(spec, pt),
                        Intersection::Parallel => same,
                        Intersection::Same => false,
                    };
                    if !ok {
                        return Ok(Some(format!("{} and {}", a.describe(spec), b.describe(spec))));
                    }
                }
            }
            Ok(None)
        });
    }
    let pts = random_points(n, rng, 500);
    s.run("phasespace.wedge_field_form", || {
        for (i, &a) in pts.iter().enumerate() {
            let b = pts[(i * 7 + 3) % pts.len()];
            if phasespace::wedge(a, b) != phasespace::wedge_field(spec, a.to_point(spec), b.to_point(spec)) {
                return Ok(Some(format!("binary and field wedge differ at {a:?}, {b:?}")));
            }
        }
        Ok(None)
    });
}

fn pauli_checks(s: &mut Suite, spec: &FieldSpec, rng: &mut StdRng) {
    let n = spec.n();
    let pts = random_points(n, rng, 500);
    s.run("pauli.commutes_iff_wedge", || {
        for (i, &a) in pts.iter().enumerate() {
            for &b in pts.iter().skip(i).take(64) {
                let (ta, tb) = (PauliTranslation::from_point(n, a), PauliTranslation::from_point(n, b));
                if ta.commutes(&tb) != (phasespace::wedge(a, b) == 0) {
                    return Ok(Some(format!("{ta} and {tb}")));
                }
            }
        }
        Ok(None)
    });
    if n <= 3 {
        s.run("pauli.compose_matches_dense", || {
            let step = if n <= 2 { 1 } else { 5 };
            for (i, &a) in pts.iter().enumerate().step_by(step) {
                for &b in pts.iter().step_by(step) {
                    let (ta, tb) = (PauliTranslation::from_point(n, a), PauliTranslation::from_point(n, b));
                    let sym = ta.compose(&tb)?.to_matrix()?;
                    let dense_prod = ta.to_matrix()? * tb.to_matrix()?;
                    if dense::max_abs_diff(&sym, &dense_prod) > 1e-12 {
                        return Ok(Some(format!("{ta} * {tb} (pair {i})")));
                    }
                }
            }
            Ok(None)
        });
    }
    if n <= 6 {
        s.run("pauli.classes_partition", || {
            let mut seen = HashSet::new();
            for class in pauli::commuting_classes(spec) {
                for t in class.members.iter().skip(1) {
                    if !seen.insert(t.point()) {
                        return Ok(Some(format!("{t} in two classes")));
                    }
                }
            }
            fail_if(seen.len() != spec.size() * spec.size() - 1, || format!("{} members", seen.len()))
        });
    }
    s.run("net.u_omega_cycles_rays", || {
        for label in StriationLabel::all(spec) {
            let target = net::u_omega_label(spec, label);
            for k in 0..n {
                let g = net::RayGenerators::new(spec, label).gens[k];
                let image = net::u_omega_conjugate(spec, &g);
                let found = net::ray_label_of(spec, image.point().to_point(spec));
                if found != target {
                    return Ok(Some(format!("generator {g} of {label} lands on {found}, expected {target}")));
                }
            }
        }
        Ok(None)
    });
}

fn net_checks(s: &mut Suite, spec: &Arc<FieldSpec>) {
    let n = spec.n();
    let net = QuantumNet::covariant_all_plus(spec.clone());
    if n <= 4 {
        s.run("net.mutually_unbiased", || {
            let report = net::mub_report(&net::mub_states(&net)?, spec.size());
            within(report.max_cross_deviation.max(report.max_gram_deviation), TOL)
        });
        s.run("net.covariant_projectors", || {
            let u = net::u_omega_matrix(spec)?;
            let mut worst: f64 = 0.0;
            for label in StriationLabel::all(spec).into_iter().filter(|l| l.is_diagonal()) {
                let p = net.ray_projector(label)?;
                let q = net.ray_projector(net::u_omega_label(spec, label))?;
                worst = worst.max(dense::max_abs_diff(&(&u * p * u.adjoint()), &q));
            }
            within(worst, TOL)
        });
    }
    if n <= 3 {
        s.run("net.translation_covariance", || {
            let mut worst: f64 = 0.0;
            for st in all_striations(spec) {
                for line in &st.lines {
                    let state = net.line_state(line)?;
                    for d in all_points(spec).step_by(3) {
                        let moved = net.line_state(&phasespace::translate_line(spec, line, d))?;
                        let t = PauliTranslation::from_point(n, d.to_binary(spec));
                        worst = worst.max(1.0 - dense::overlap(&moved, &t.apply(&state)));
                    }
                }
            }
            within(worst, TOL)
        });
    }
}

fn wigner_checks(s: &mut Suite, spec: &Arc<FieldSpec>, rng: &mut StdRng) -> Result<()> {
    let n = spec.n();
    let net = QuantumNet::covariant_all_plus(spec.clone());
    if n <= 3 {
        let ops = PointOperators::new(&net)?;
        let size = spec.size();
        let points: Vec<BinaryPoint> = all_points(spec).map(|pt| pt.to_binary(spec)).collect();
        let a: Vec<CMatrix> = points.iter().map(|&b| ops.at(b)).collect();
        s.run("wigner.point_operator_gram", || {
            let mut worst: f64 = 0.0;
            for i in 0..a.len() {
                for j in i..a.len() {
                    let expected = if i == j { 1.0 / size as f64 } else { 0.0 };
                    worst = worst.max((dense::trace_product(&a[i], &a[j]) - Complex64::from(expected)).norm());
                }
            }
            within(worst, TOL)
        });
        s.run("wigner.line_sums_are_projectors", || {
            let mut worst: f64 = 0.0;
            for st in all_striations(spec) {
                for line in &st.lines {
                    let sum = line
                        .points(spec)
                        .iter()
                        .fold(CMatrix::zeros(size, size), |acc, pt| acc + &a[pt.grid_index(spec)]);
                    worst = worst.max(dense::max_abs_diff(&sum, &net.line_projector(line)?));
                }
            }
            within(worst, TOL)
        });
        s.run("wigner.reconstruct_roundtrip", || {
            let mut worst: f64 = 0.0;
            for _ in 0..10 {
                let rho = DensityMatrix::new(dense::random_density(rng, size))?;
                let back = wigner::reconstruct_matrix(&wigner::wigner_of(&rho, &net)?, &net)?;
                worst = worst.max(dense::max_abs_diff(&back, rho.matrix()));
            }
            within(worst, TOL)
        });
        s.run("wigner.marginals", || {
            let rho = DensityMatrix::new(dense::random_density(rng, size))?;
            let grid = wigner::wigner_of(&rho, &net)?;
            let mut worst: f64 = 0.0;
            for st in all_striations(spec) {
                for line in &st.lines {
                    let sum = grid.line_sum(line);
                    let p = dense::trace_product(rho.matrix(), &net.line_projector(line)?).re;
                    if !(-TOL..=1.0 + TOL).contains(&sum) {
                        return Ok(Some(format!("line sum {sum} outside [0, 1]")));
                    }
                    worst = worst.max((sum - p).abs());
                }
            }
            within(worst, TOL)
        });
        s.run("wigner.purity_identity", || {
            let v = dense::random_state(rng, size);
            let grid = wigner::wigner_of_state(&v, &net)?;
            let mut worst: f64 = 0.0;
            for &alpha in &points {
                let (l, r) = wigner::purity_identity_check(&grid, alpha);
                worst = worst.max((l - r).abs());
            }
            let mixed = wigner::wigner_of(&DensityMatrix::maximally_mixed(n)?, &net)?;
            let (l, r) = wigner::purity_identity_check(&mixed, points[1]);
            if (l - r).abs() < 1e-6 {
                return Ok(Some("identity does not flag the maximally mixed state".into()));
            }
            within(worst, TOL)
        });
        s.run("wigner.stabilizer_formula", || {
            let groups = if n <= 2 {
                StabilizerGroup::all(n)?
            } else {
                (0..20).map(|_| StabilizerGroup::random(rng, n)).collect::<Result<Vec<_>>>()?
            };
            let denominator = (size * size) as i64;
            for g in &groups {
                let exact = wigner::stabilizer_wigner(g, &net)?;
                let dense_grid = wigner::wigner_of(&DensityMatrix::new(g.projector()?)?, &net)?;
                let rounded = dense_grid.rationalize(denominator, 1e-9);
                if rounded.as_deref() != exact.exact() {
                    return Ok(Some(format!("group {:?} disagrees", g.generators())));
                }
            }
            Ok(None)
        });
    }
    if n <= wigner::MAX_EXACT_GRID_QUBITS {
        s.run("wigner.stabilizer_values_in_lattice", || {
            let nn = 1i64 << (2 * n);
            let net = QuantumNet::all_plus(spec.clone());
            for _ in 0..5 {
                let g = StabilizerGroup::random(rng, n)?;
                let grid = wigner::stabilizer_wigner(&g, &net)?;
                let values = grid.exact().expect("exact grid");
                if values.iter().any(|v| nn % v.denom() != 0) {
                    return Ok(Some("value not a multiple of 1/N^2".into()));
                }
                if values.iter().sum::<Rational>() != Rational::from(1) {
                    return Ok(Some("grid does not sum to 1".into()));
                }
            }
            Ok(None)
        });
        s.run("wigner.aligned_net_support", || {
            let g = StabilizerGroup::random(rng, n)?;
            let aligned = wigner::aligned_net(&g, spec.clone())?;
            let grid = wigner::stabilizer_wigner(&g, &aligned)?;
            let values = grid.exact().expect("exact grid");
            let inv = Rational::new(1, spec.size() as i64);
            let on = values.iter().filter(|&&v| v == inv).count();
            let zero = values.iter().filter(|v| v.is_zero()).count();
            fail_if(on != spec.size() || on + zero != values.len(), || format!("{on} points at 1/N"))
        });
    }
    if n == 2 {
        s.run("wigner.negativity_every_net", || {
            let groups = StabilizerGroup::all(2)?;
            for candidate in QuantumNet::enumerate_diagonal(spec.clone(), 0, 0)? {
                let mut negative = false;
                for g in &groups {
                    let grid = wigner::stabilizer_wigner(g, &candidate)?;
                    if grid.exact().expect("exact grid").iter().any(|v| *v < Rational::zero()) {
                        negative = true;
                        break;
                    }
                }
                if !negative {
                    return Ok(Some(format!("net {} has no negative stabilizer grid", candidate.fingerprint())));
                }
            }
            Ok(None)
        });
    }
    Ok(())
}

fn app_checks(s: &mut Suite, spec: &Arc<FieldSpec>) {
    match spec.n() {
        2 => {
            s.run("apps.bell_two_patterns", || {
                let set = bell::bell_wigner_solutions(spec.clone())?;
                let (c, p) = (set.count(bell::BellPattern::Concentrated), set.count(bell::BellPattern::Spread));
                fail_if(c == 0 || p == 0 || c + p != 64, || format!("{c} concentrated, {p} spread"))
            });
            s.run("apps.bell_line_swaps", || {
                for candidate in QuantumNet::enumerate_diagonal(spec.clone(), 0, 0)? {
                    let grid = bell::phi_plus_wigner(&candidate)?;
                    for shift in [BinaryPoint::new(0b11, 0), BinaryPoint::new(0, 0b11)] {
                        let moved = grid.translated(shift.to_point(spec));
                        let dev = grid.to_f64().iter().zip(moved.to_f64()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                        if dev > TOL {
                            return Ok(Some(format!("net {} not invariant", candidate.fingerprint())));
                        }
                    }
                }
                Ok(None)
            });
            s.run("apps.mean_king", || {
                let net = king::preset_net(spec.clone())?;
                let sol = king::mean_king_solve(&net)?;
                let report = king::mean_king_simulate(&sol)?;
                let sums = king::line_sums(&king::phi1_wigner(&net)?)?;
                let half = Rational::new(1, 2);
                let ok = sums.zero_lines.iter().all(|v| v.is_zero())
                    && sums.rays.iter().all(|&v| v == half)
                    && sums.remaining.iter().all(|&v| v == half);
                fail_if(!ok || (report.success_probability - 1.0).abs() > 1e-12 || sol.gram_deviation() > TOL, || {
                    format!("sums {sums:?}, success {}", report.success_probability)
                })
            });
        }
        3 => {
            s.run("apps.code_grid_symmetries", || {
                let net = net::preset("qec", spec.clone())?;
                let mut worst: f64 = 0.0;
                for (a, b) in [(1.0, 0.0), (0.0, 1.0), (0.6, 0.8)] {
                    let grid = qec::code_wigner(Complex64::from(a), Complex64::from(b), &net)?;
                    worst = worst.max(qec::column_identification_deviation(&grid));
                    for o in qec::error_overlaps(&grid) {
                        worst = worst.max(o.abs());
                    }
                    if b == 0.0 || a == 0.0 {
                        worst = worst.max(qec::row_identification_deviation(&grid));
                    }
                }
                within(worst, TOL)
            });
            s.run("apps.code_solution_family", || {
                let net = net::preset("qec", spec.clone())?;
                let family = qec::code_solution_family(&net)?;
                let cov = qec::covariant_solutions(&family, spec.clone())?;
                fail_if(family.len() != 8 || cov.len() != 4, || format!("{} solutions, {} covariant", family.len(), cov.len()))
            });
        }
        _ => {}
    }
}

/// Run every check that applies to `n`, with a seeded generator for the
/// sampled ones.
pub fn run_suite(spec: Arc<FieldSpec>, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut suite = Suite { results: Vec::new() };
    galois_checks(&mut suite, &spec, &mut rng);
    geometry_checks(&mut suite, &spec, &mut rng);
    pauli_checks(&mut suite, &spec, &mut rng);
    net_checks(&mut suite, &spec);
    wigner_checks(&mut suite, &spec, &mut rng)?;
    app_checks(&mut suite, &spec);
    Ok(suite.results)
}
