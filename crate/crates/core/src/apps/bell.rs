//! Two-qubit Bell states and their Wigner functions over all 64 nets.
//!
//! Every such grid is constant on four blocks. Splitting each axis into
//! `{0, w^2}` and `{1, w}`, the parameters are
//! `a = (q in {0,w^2}, p in {0,w^2})`, `b = (q in {0,w^2}, p in {1,w})`,
//! `c = (q in {1,w}, p in {0,w^2})` and `d` on the remaining block.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{collapse, exact_values, require_n};
use crate::dense::CVector;
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::net::{QuantumNet, Signs};
use crate::pauli::PauliTranslation;
use crate::wigner::{self, Rational, StabilizerGroup, WignerGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];

    pub fn name(&self) -> &'static str {
        match self {
            BellKind::PhiPlus => "bell_phi_plus",
            BellKind::PhiMinus => "bell_phi_minus",
            BellKind::PsiPlus => "bell_psi_plus",
            BellKind::PsiMinus => "bell_psi_minus",
        }
    }

    /// `(XX eigenvalue, ZZ eigenvalue)`.
    fn eigenvalues(&self) -> (i8, i8) {
        match self {
            BellKind::PhiPlus => (1, 1),
            BellKind::PhiMinus => (-1, 1),
            BellKind::PsiPlus => (1, -1),
            BellKind::PsiMinus => (-1, -1),
        }
    }

    pub fn state(&self) -> CVector {
        let h = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
        let (x, z) = self.eigenvalues();
        let mut v = CVector::zeros(4);
        // ZZ = +1 lives on |00>, |11>; XX fixes the relative sign
        let (i, j) = if z == 1 { (0b00, 0b11) } else { (0b01, 0b10) };
        v[i] = h;
        v[j] = h * x as f64;
        v
    }

    pub fn stabilizer(&self) -> StabilizerGroup {
        let (x, z) = self.eigenvalues();
        let gx = PauliTranslation::new(2, 0b11, 0).times_i_pow(if x < 0 { 2 } else { 0 });
        let gz = PauliTranslation::new(2, 0, 0b11).times_i_pow(if z < 0 { 2 } else { 0 });
        StabilizerGroup::from_generators(&[gx, gz]).expect("Bell generators commute")
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellKind::ALL
            .into_iter()
            .find(|k| k.name() == s || k.name().trim_start_matches("bell_") == s)
            .ok_or_else(|| Error::Format(format!("unknown Bell state {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl BellParams {
    pub fn as_array(&self) -> [Rational; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Normalization, the `X0X1` and `Z0Z1` eigenvalue equations for
    /// `|Phi+>`, and the orthogonality condition `ab + cd = 0`.
    pub fn satisfies_phi_plus_equations(&self) -> bool {
        let q = Rational::new(1, 4);
        let BellParams { a, b, c, d } = *self;
        a + b + c + d == q && a + b - c - d == q && a + c - b - d == q && a * b + c * d == Rational::from(0)
    }
}

impl fmt::Display for BellParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} c={} d={}", self.a, self.b, self.c, self.d)
    }
}

/// The two grids allowed for `|Phi+>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellPattern {
    /// `a = 1/4`, `b = c = d = 0`.
    Concentrated,
    /// `a = b = c = 1/8`, `d = -1/8`.
    Spread,
}

impl BellPattern {
    pub fn params(&self) -> BellParams {
        let r = |k| Rational::new(k, 8);
        match self {
            BellPattern::Concentrated => BellParams { a: r(2), b: r(0), c: r(0), d: r(0) },
            BellPattern::Spread => BellParams { a: r(1), b: r(1), c: r(1), d: r(-1) },
        }
    }

    pub fn classify(params: &BellParams) -> Option<BellPattern> {
        [BellPattern::Concentrated, BellPattern::Spread].into_iter().find(|p| p.params() == *params)
    }
}

fn axis_class(index: usize) -> usize {
    // axis order 0, 1, w, w^2
    match index {
        0 | 3 => 0,
        _ => 1,
    }
}

/// Read `(a, b, c, d)` off a two-qubit grid.
pub fn bell_params(grid: &WignerGrid) -> Result<BellParams> {
    require_n(grid.spec(), 2)?;
    let values = match grid.values() {
        wigner::GridValues::Exact(v) => v.clone(),
        wigner::GridValues::Dense(_) => exact_values(grid, 16)?,
    };
    let p = collapse(grid.spec(), &values, 4, |qi, pi| 2 * axis_class(qi) + axis_class(pi))?;
    Ok(BellParams { a: p[0], b: p[1], c: p[2], d: p[3] })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellSolution {
    /// Generator signs of the three diagonal rays, slope 0 first.
    pub diagonal_signs: Vec<Signs>,
    pub fingerprint: String,
    pub params: BellParams,
    pub pattern: BellPattern,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellSolutionSet {
    pub solutions: Vec<BellSolution>,
}

impl BellSolutionSet {
    pub fn count(&self, pattern: BellPattern) -> usize {
        self.solutions.iter().filter(|s| s.pattern == pattern).count()
    }
}

/// `W(|Phi+>)` from the dense state.
pub fn phi_plus_wigner(net: &QuantumNet) -> Result<WignerGrid> {
    require_n(net.spec(), 2)?;
    wigner::wigner_of_state(&BellKind::PhiPlus.state(), net)
}

pub fn classify_net(net: &QuantumNet) -> Result<BellSolution> {
    let params = bell_params(&phi_plus_wigner(net)?)?;
    let pattern = BellPattern::classify(&params)
        .ok_or_else(|| Error::PatternMismatch(format!("Bell grid {params} is neither known solution")))?;
    Ok(BellSolution {
        diagonal_signs: net.all_signs()[2..].to_vec(),
        fingerprint: net.fingerprint(),
        params,
        pattern,
    })
}

/// Classify `W(|Phi+>)` for each of the 64 nets with all-(+1) h and v rays.
pub fn bell_wigner_solutions(spec: Arc<FieldSpec>) -> Result<BellSolutionSet> {
    require_n(&spec, 2)?;
    let solutions = QuantumNet::enumerate_diagonal(spec, 0, 0)?
        .iter()
        .map(classify_net)
        .collect::<Result<Vec<_>>>()?;
    Ok(BellSolutionSet { solutions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(2).unwrap())
    }

    #[test]
    fn both_patterns_over_all_nets() {
        let set = bell_wigner_solutions(spec()).unwrap();
        assert_eq!(set.solutions.len(), 64);
        let c = set.count(BellPattern::Concentrated);
        let s = set.count(BellPattern::Spread);
        assert_eq!(c + s, 64);
        assert!(c > 0 && s > 0);
        assert!(set.solutions.iter().all(|s| s.params.satisfies_phi_plus_equations()));
    }

    #[test]
    fn default_net_is_spread() {
        let net = QuantumNet::all_plus(spec());
        assert_eq!(classify_net(&net).unwrap().pattern, BellPattern::Spread);
    }

    #[test]
    fn stabilizers_fix_states() {
        for kind in BellKind::ALL {
            let v = kind.state();
            let p = kind.stabilizer().projector().unwrap();
            assert!(crate::dense::max_abs_diff(&p, &crate::dense::projector(&v)) < 1e-12, "{kind}");
            assert_eq!(kind.name().parse::<BellKind>().unwrap(), kind);
        }
    }
}
