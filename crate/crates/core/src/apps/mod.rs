//! The three worked applications: Bell-state grids, the three-qubit phase
//! code, and the mean king construction. Plus a check of the printed
//! two- and three-qubit `A(0)` expansions.

pub mod bell;
pub mod king;
pub mod qec;
pub mod reference;

use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::wigner::{Rational, WignerGrid};

/// Exact grid values (indexed like `PhasePoint::grid_index`), snapping dense
/// grids to multiples of `1/denominator`.
pub fn exact_values(grid: &WignerGrid, denominator: i64) -> Result<Vec<Rational>> {
    grid.rationalize(denominator, 1e-9).ok_or_else(|| {
        Error::PatternMismatch(format!("values are not multiples of 1/{denominator}"))
    })
}

/// Collapse a grid onto parameters: `cell(qi, pi)` names the parameter of the
/// cell at axis indices `(qi, pi)`. Every cell of a parameter must agree.
pub(crate) fn collapse<F>(spec: &FieldSpec, values: &[Rational], count: usize, cell: F) -> Result<Vec<Rational>>
where
    F: Fn(usize, usize) -> usize,
{
    let size = spec.size();
    let mut params: Vec<Option<Rational>> = vec![None; count];
    for qi in 0..size {
        for pi in 0..size {
            let v = values[qi * size + pi];
            let k = cell(qi, pi);
            match params[k] {
                None => params[k] = Some(v),
                Some(prev) if prev != v => {
                    return Err(Error::PatternMismatch(format!(
                        "parameter {k} takes both {prev} and {v}"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    params
        .into_iter()
        .enumerate()
        .map(|(k, p)| p.ok_or_else(|| Error::PatternMismatch(format!("parameter {k} has no cells"))))
        .collect()
}

pub(crate) fn require_n(spec: &FieldSpec, n: usize) -> Result<()> {
    if spec.n() != n {
        Err(Error::WrongSize { expected: n, got: spec.n() })
    } else {
        Ok(())
    }
}
