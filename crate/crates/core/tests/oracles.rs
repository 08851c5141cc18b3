//! Library results against values computed independently in the test, and
//! against values printed in the literature for the default polynomials.

use std::sync::Arc;

use num_complex::Complex64;

use gfwigner::dense::{self, CMatrix};
use gfwigner::net::{self, QuantumNet};
use gfwigner::phasespace::all_points;
use gfwigner::wigner::{self, DensityMatrix};
use gfwigner::{FieldElement, FieldSpec, Generator, Line, PauliTranslation, PointOperators, StriationLabel};

/// Schoolbook carry-less product reduced by the polynomial bits `poly`
/// (including the leading term).
fn clmul_mod(a: u32, b: u32, poly: u32, n: usize) -> u32 {
    let mut acc: u64 = 0;
    for i in 0..n {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    for bit in (n..2 * n).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= (poly as u64) << (bit - n);
        }
    }
    acc as u32
}

fn poly_bits(spec: &FieldSpec) -> u32 {
    spec.polynomial().low_bits() | 1 << spec.n()
}

#[test]
fn multiplication_matches_schoolbook() {
    for n in 1..=6 {
        let spec = FieldSpec::new(n).unwrap();
        let poly = poly_bits(&spec);
        for a in 0..1u32 << n {
            for b in 0..1u32 << n {
                let got = spec.mul(FieldElement::from_bits(a), FieldElement::from_bits(b)).bits();
                assert_eq!(got, clmul_mod(a, b, poly, n), "n={n} {a}*{b}");
            }
        }
    }
}

#[test]
fn trace_matches_repeated_squaring() {
    for n in 1..=8 {
        let spec = FieldSpec::new(n).unwrap();
        let poly = poly_bits(&spec);
        for x in 0..1u32 << n {
            let mut term = x;
            let mut sum = 0;
            for _ in 0..n {
                sum ^= term;
                term = clmul_mod(term, term, poly, n);
            }
            assert!(sum <= 1, "trace lands outside GF(2)");
            assert_eq!(spec.trace(FieldElement::from_bits(x)), sum, "n={n} x={x}");
        }
    }
}

#[test]
fn default_polynomials() {
    assert_eq!(FieldSpec::new(2).unwrap().polynomial().to_string(), "x^2 + x + 1");
    assert_eq!(FieldSpec::new(3).unwrap().polynomial().to_string(), "x^3 + x^2 + 1");
    assert_eq!(FieldSpec::new(4).unwrap().polynomial().to_string(), "x^4 + x + 1");
}

#[test]
fn printed_three_qubit_momentum_basis() {
    let spec = FieldSpec::new(3).unwrap();
    let labels: Vec<String> = spec.momentum_basis().into_iter().map(|x| spec.label(x)).collect();
    assert_eq!(labels, ["1", "w^6", "w"]);
}

#[test]
fn orderings_visit_every_nonzero_string() {
    for n in 1..=10 {
        let spec = FieldSpec::new(n).unwrap();
        for which in [Generator::Companion, Generator::Transpose] {
            let mut seen = spec.axis_labels(which);
            seen.sort_unstable();
            assert_eq!(seen, (0..1u32 << n).collect::<Vec<_>>(), "n={n}");
        }
    }
}

fn pauli_1q(c: char) -> CMatrix {
    let (o, z, i) = (Complex64::from(1.0), Complex64::from(0.0), Complex64::i());
    match c {
        'I' => CMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        _ => CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// Kronecker product with the leftmost letter as the leftmost factor.
fn kron_string(s: &str) -> CMatrix {
    s.chars().map(pauli_1q).reduce(|a, b| a.kronecker(&b)).unwrap()
}

#[test]
fn translations_match_kronecker_products() {
    for s in ["XZ", "YI", "ZYX", "IYY", "XXZZ"] {
        let t: PauliTranslation = s.parse().unwrap();
        assert!(dense::max_abs_diff(&t.to_matrix().unwrap(), &kron_string(s)) < 1e-14, "{s}");
    }
}

#[test]
fn translation_products_match_matrices() {
    let strings = ["XY", "ZZ", "YX", "IZ", "XI", "YY"];
    for a in strings {
        for b in strings {
            let (ta, tb): (PauliTranslation, PauliTranslation) = (a.parse().unwrap(), b.parse().unwrap());
            let product = ta.compose(&tb).unwrap();
            let expected = kron_string(a) * kron_string(b);
            assert!(dense::max_abs_diff(&product.to_matrix().unwrap(), &expected) < 1e-14, "{a}*{b}");
        }
    }
}

/// `A(alpha) = (1/N) (sum of the N + 1 line projectors through alpha - I)`,
/// assembled directly from line states.
fn point_operator_from_lines(net: &QuantumNet, pt: gfwigner::PhasePoint) -> CMatrix {
    let spec = net.spec();
    let dim = spec.size();
    let mut sum = CMatrix::zeros(dim, dim);
    for label in StriationLabel::all(spec) {
        let v = net.line_state(&Line::through(spec, label, pt)).unwrap();
        sum += &v * v.adjoint();
    }
    (sum - dense::identity(dim)) / Complex64::from(dim as f64)
}

#[test]
fn point_operators_match_line_sum_definition() {
    for n in [1, 2, 3] {
        let spec = Arc::new(FieldSpec::new(n).unwrap());
        for net in [QuantumNet::all_plus(spec.clone()), QuantumNet::covariant_all_plus(spec.clone())] {
            let ops = PointOperators::new(&net).unwrap();
            for pt in all_points(&spec) {
                let expected = point_operator_from_lines(&net, pt);
                assert!(dense::max_abs_diff(&ops.at_point(pt), &expected) < 1e-12, "n={n}");
            }
        }
    }
}

#[test]
fn wigner_matches_trace_formula() {
    let spec = Arc::new(FieldSpec::new(2).unwrap());
    let net = QuantumNet::covariant_all_plus(spec.clone());
    let h = Complex64::from(0.5);
    let v = gfwigner::dense::CVector::from_vec(vec![h, h * Complex64::i(), -h, h]);
    let rho = DensityMatrix::from_state(&v).unwrap();
    let grid = wigner::wigner_of(&rho, &net).unwrap();
    for pt in all_points(&spec) {
        let expected = dense::trace_product(rho.matrix(), &point_operator_from_lines(&net, pt)).re;
        assert!((grid.get(pt) - expected).abs() < 1e-12);
    }
}

#[test]
fn squeezing_unitary_is_the_field_map() {
    // |x> -> |x w> in canonical coordinates, qubit 0 leftmost
    for n in 1..=4 {
        let spec = FieldSpec::new(n).unwrap();
        let u = net::u_omega_matrix(&spec).unwrap();
        let w = spec.omega_pow(1);
        for x in 0..1u32 << n {
            let y = spec.mul(FieldElement::from_bits(x), w).bits();
            let col = dense::qubits_to_index(x, n) as usize;
            let row = dense::qubits_to_index(y, n) as usize;
            assert!((u[(row, col)] - Complex64::from(1.0)).norm() < 1e-12, "n={n} x={x}");
        }
    }
}
