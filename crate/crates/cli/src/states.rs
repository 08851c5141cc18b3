//! Named states and state files.
//!
//! Presets: `ket_<bits>` (qubit 0 first), `bell_phi_plus`, `bell_phi_minus`,
//! `bell_psi_plus`, `bell_psi_minus`, `qec_logical_0`, `qec_logical_1`,
//! `meanking_phi1` and `mixed`.
//!
//! Files are JSON, one of
//! `{"stabilizer": ["+XX", "-ZZ"]}`, `{"vector": [[re, im], ...]}` or
//! `{"matrix": [[[re, im], ...], ...]}`, or plain text with one Pauli string
//! per line (`#` starts a comment).

use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Deserialize;

use gfwigner::apps::{bell::BellKind, king, qec};
use gfwigner::dense::{CMatrix, CVector};
use gfwigner::wigner::{self, DensityMatrix, StabilizerGroup, WignerGrid};
use gfwigner::{FieldSpec, PauliTranslation, QuantumNet};

use crate::config::read_file;
use crate::{CliError, CliResult};

#[derive(Clone, Debug)]
pub enum StateInput {
    /// Grid computed on the exact path.
    Stabilizer(StabilizerGroup),
    Dense(DensityMatrix),
}

impl StateInput {
    pub fn wigner(&self, net: &QuantumNet) -> CliResult<WignerGrid> {
        Ok(match self {
            StateInput::Stabilizer(g) => wigner::stabilizer_wigner(g, net)?,
            StateInput::Dense(rho) => wigner::wigner_of(rho, net)?,
        })
    }

    pub fn n(&self) -> usize {
        match self {
            StateInput::Stabilizer(g) => g.n(),
            StateInput::Dense(rho) => rho.n(),
        }
    }
}

fn need(n: usize, required: usize, name: &str) -> CliResult<()> {
    if n != required {
        return Err(CliError::Validation(format!("state {name} needs n = {required}, got n = {n}")));
    }
    Ok(())
}

/// Generators come from the user here, so any rejection is invalid input.
fn stabilizer(gens: &[PauliTranslation]) -> CliResult<StateInput> {
    StabilizerGroup::from_generators(gens)
        .map(StateInput::Stabilizer)
        .map_err(|e| CliError::Validation(e.to_string()))
}

/// Resolve a preset name or a state file for the field `spec`.
pub fn resolve(name: &str, spec: &FieldSpec) -> CliResult<StateInput> {
    let n = spec.n();
    let state = match name {
        "mixed" => StateInput::Dense(DensityMatrix::maximally_mixed(n)?),
        "qec_logical_0" | "qec_logical_1" => {
            need(n, 3, name)?;
            let zl = qec::logical_z();
            let zl = if name.ends_with('1') { zl.times_i_pow(2) } else { zl };
            stabilizer(&[qec::s1(), qec::s2(), zl])?
        }
        "meanking_phi1" => {
            need(n, 2, name)?;
            let net = king::preset_net(std::sync::Arc::new(spec.clone()))?;
            StateInput::Dense(DensityMatrix::from_state(&king::phi1(&net)?)?)
        }
        _ if name.starts_with("bell_") => {
            let kind = BellKind::from_str(name).map_err(|e| CliError::Validation(e.to_string()))?;
            need(n, 2, name)?;
            StateInput::Stabilizer(kind.stabilizer())
        }
        _ if name.starts_with("ket_") => ket(&name[4..], n)?,
        _ => from_file(Path::new(name))?,
    };
    if state.n() != n {
        return Err(CliError::Validation(format!("state {name} has {} qubits, field has n = {n}", state.n())));
    }
    Ok(state)
}

/// `ket_0110`: computational basis state, qubit 0 first.
fn ket(bits: &str, n: usize) -> CliResult<StateInput> {
    if bits.len() != n || !bits.chars().all(|c| c == '0' || c == '1') {
        return Err(CliError::Validation(format!("ket_{bits}: expected {n} binary digits")));
    }
    let gens: Vec<PauliTranslation> = bits
        .chars()
        .enumerate()
        .map(|(i, c)| {
            let z = PauliTranslation::new(n, 0, 1 << i);
            if c == '1' {
                z.times_i_pow(2)
            } else {
                z
            }
        })
        .collect();
    stabilizer(&gens)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    stabilizer: Option<Vec<String>>,
    vector: Option<Vec<[f64; 2]>>,
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

fn from_file(path: &Path) -> CliResult<StateInput> {
    if !path.exists() {
        return Err(CliError::Validation(format!("unknown state {:?} (not a preset or a file)", path.display().to_string())));
    }
    let text = read_file(path)?;
    let bad = |m: String| CliError::Validation(format!("{}: {m}", path.display()));
    let parsed: Option<StateFile> = if text.trim_start().starts_with('{') {
        Some(serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?)
    } else {
        None
    };
    let Some(file) = parsed else {
        let gens = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(PauliTranslation::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        return stabilizer(&gens);
    };
    match (file.stabilizer, file.vector, file.matrix) {
        (Some(list), None, None) => {
            let gens = list.iter().map(|s| s.parse()).collect::<Result<Vec<PauliTranslation>, _>>()?;
            stabilizer(&gens)
        }
        (None, Some(v), None) => {
            let v = CVector::from_iterator(v.len(), v.iter().map(|&[re, im]| Complex64::new(re, im)));
            let norm = v.norm();
            if norm < 1e-12 {
                return Err(bad("zero vector".into()));
            }
            Ok(StateInput::Dense(DensityMatrix::from_state(&(v / Complex64::from(norm)))?))
        }
        (None, None, Some(rows)) => {
            let dim = rows.len();
            if rows.iter().any(|r| r.len() != dim) {
                return Err(bad("matrix is not square".into()));
            }
            let m = CMatrix::from_fn(dim, dim, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1]));
            Ok(StateInput::Dense(DensityMatrix::new(m)?))
        }
        _ => Err(bad("give exactly one of stabilizer, vector, matrix".into())),
    }
}
