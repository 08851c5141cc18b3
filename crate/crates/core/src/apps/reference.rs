//! Closed-form `A(0)` for two and three qubits, written as
//! `(1/N^2) { sum over X and Z strings + sum_m U^m K U^dag^m - I }`
//! with `U` the squeezing circuit and a per-size kernel `K`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::{self, CMatrix};
use crate::error::{Error, Result};
use crate::net::{self, QuantumNet};
use crate::pauli::PauliTranslation;
use crate::wigner::PointOperators;

/// Kernel terms `(coefficient, Pauli string)`; products of strings are
/// written out term by term.
fn kernel(n: usize) -> Result<Vec<(f64, &'static str)>> {
    match n {
        2 => Ok(vec![(1.0, "YI"), (1.0, "IY"), (1.0, "YY")]),
        // Y_1 + (X_1 Z_2 + Z_1 Y_2 - Y_1 X_2)(I + Y_0)
        3 => Ok(vec![
            (1.0, "IYI"),
            (1.0, "IXZ"),
            (1.0, "IZY"),
            (-1.0, "IYX"),
            (1.0, "YXZ"),
            (1.0, "YZY"),
            (-1.0, "YYX"),
        ]),
        _ => Err(Error::UnsupportedSize { got: n, max: 3 }),
    }
}

/// The closed form evaluated densely.
pub fn printed_a0(spec: &crate::galois::FieldSpec) -> Result<CMatrix> {
    let n = spec.n();
    let terms = kernel(n)?;
    let dim = spec.size();
    let mut k = CMatrix::zeros(dim, dim);
    for (c, s) in terms {
        let t: PauliTranslation = s.parse()?;
        k += t.to_matrix()? * Complex64::from(c);
    }
    let mut sum = CMatrix::zeros(dim, dim);
    for mask in 0..dim as u32 {
        sum += PauliTranslation::new(n, mask, 0).to_matrix()?;
        sum += PauliTranslation::new(n, 0, mask).to_matrix()?;
    }
    let u = net::u_omega_matrix(spec)?;
    let mut conj = k;
    for _ in 0..spec.group_order() {
        sum += &conj;
        conj = &u * conj * u.adjoint();
    }
    Ok((sum - dense::identity(dim)) / Complex64::from((dim * dim) as f64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct A0Comparison {
    pub n: usize,
    pub net_fingerprint: String,
    pub max_deviation: f64,
    pub matches: bool,
}

pub const A0_TOLERANCE: f64 = 1e-12;

/// Compare the closed form with `A(0)` built from the net's ray projectors.
pub fn compare_printed_a0(net: &QuantumNet) -> Result<A0Comparison> {
    let expected = printed_a0(net.spec())?;
    let ops = PointOperators::new(net)?;
    let max_deviation = dense::max_abs_diff(&expected, ops.a0());
    Ok(A0Comparison {
        n: net.n(),
        net_fingerprint: net.fingerprint(),
        max_deviation,
        matches: max_deviation < A0_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldSpec;
    use std::sync::Arc;

    #[test]
    fn closed_forms_match_covariant_net() {
        for n in [2, 3] {
            let net = QuantumNet::covariant_all_plus(Arc::new(FieldSpec::new(n).unwrap()));
            let c = compare_printed_a0(&net).unwrap();
            assert!(c.matches, "n={n} deviation {}", c.max_deviation);
        }
    }
}
