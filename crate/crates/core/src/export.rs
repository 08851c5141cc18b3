//! Grid exporters: CSV, JSON (with import) and an ASCII shading.
//!
//! Rows run over `p` descending and columns over `q` ascending, both in
//! power order. Exact grids print fractions such as `-1/16`; dense grids
//! print decimals with 12 significant digits.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{FieldSpec, Polynomial};
use crate::wigner::{GridValues, Provenance, Rational, WignerGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridFormat {
    Csv,
    Json,
    Ascii,
}

impl FromStr for GridFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(GridFormat::Csv),
            "json" => Ok(GridFormat::Json),
            "ascii" => Ok(GridFormat::Ascii),
            _ => Err(Error::Format(format!("unknown format {s:?} (csv, json, ascii)"))),
        }
    }
}

impl fmt::Display for GridFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridFormat::Csv => "csv",
            GridFormat::Json => "json",
            GridFormat::Ascii => "ascii",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridExport {
    pub format: GridFormat,
    pub payload: String,
}

/// Values this close to zero are rounding noise and print as `0`.
pub const ZERO_SNAP: f64 = 1e-13;

/// Decimal with 12 significant digits; zero (including `-0`) prints as `0`.
pub fn format_decimal(x: f64) -> String {
    if x.abs() < ZERO_SNAP || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0".into()
    } else {
        s
    }
}

pub fn format_rational(r: Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("not a fraction: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from(s.trim().parse::<i64>().map_err(|_| bad())?)),
    }
}

fn display_cells(grid: &WignerGrid) -> Vec<Vec<String>> {
    let size = grid.spec().size();
    (0..size)
        .rev()
        .map(|pi| {
            (0..size)
                .map(|qi| {
                    let i = qi * size + pi;
                    match grid.values() {
                        GridValues::Exact(v) => format_rational(v[i]),
                        GridValues::Dense(v) => format_decimal(v[i]),
                    }
                })
                .collect()
        })
        .collect()
}

pub fn to_csv(grid: &WignerGrid) -> String {
    display_cells(grid).iter().map(|row| row.join(",") + "\n").collect()
}

/// Sign shading: `#` positive, `o` negative, `.` zero, with `p` labels on the
/// left and `q` labels underneath.
pub fn to_ascii(grid: &WignerGrid) -> String {
    let spec = grid.spec();
    let size = spec.size();
    let labels: Vec<String> = spec.elements().map(|x| spec.label(x)).collect();
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(1);
    let mut out = String::new();
    for pi in (0..size).rev() {
        out.push_str(&format!("{:>width$} |", labels[pi]));
        for qi in 0..size {
            let v = grid.get_index(qi * size + pi);
            let c = if v > 1e-12 {
                '#'
            } else if v < -1e-12 {
                'o'
            } else {
                '.'
            };
            out.push_str(&format!(" {c:>width$}"));
        }
        out.push('\n');
    }
    out.push_str(&format!("{:>width$} +{}\n", "", "-".repeat(size * (width + 1))));
    let axis: Vec<String> = labels.iter().map(|l| format!("{l:>width$}")).collect();
    out.push_str(&format!("{:>width$}  {}\n", "", axis.join(" ")));
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridDocument {
    pub n: usize,
    /// Field polynomial, coefficients low to high.
    pub poly: String,
    pub net_fingerprint: String,
    /// `dense` or `stabilizer-exact`.
    pub provenance: String,
    /// Axis labels in power order.
    pub axis: Vec<String>,
    /// Display rows, `p` descending.
    pub rows: Vec<Vec<String>>,
}

pub fn to_document(grid: &WignerGrid) -> GridDocument {
    let spec = grid.spec();
    GridDocument {
        n: spec.n(),
        poly: spec.polynomial().to_bit_string(),
        net_fingerprint: grid.net_fingerprint().to_string(),
        provenance: match grid.provenance() {
            Provenance::Dense => "dense".into(),
            Provenance::StabilizerExact => "stabilizer-exact".into(),
        },
        axis: spec.elements().map(|x| spec.label(x)).collect(),
        rows: display_cells(grid),
    }
}

pub fn to_json(grid: &WignerGrid) -> String {
    serde_json::to_string_pretty(&to_document(grid)).expect("document serializes") + "\n"
}

/// Rebuild a grid from its JSON export.
pub fn from_json(text: &str) -> Result<WignerGrid> {
    let doc: GridDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let spec = Arc::new(FieldSpec::with_polynomial(Polynomial::parse(&doc.poly)?)?);
    if spec.n() != doc.n {
        return Err(Error::DegreeMismatch { expected: doc.n + 1, got: doc.poly.len() });
    }
    let size = spec.size();
    if doc.rows.len() != size || doc.rows.iter().any(|r| r.len() != size) {
        return Err(Error::Format(format!("expected {size} rows of {size} values")));
    }
    let cell = |qi: usize, pi: usize| doc.rows[size - 1 - pi][qi].as_str();
    let values = match doc.provenance.as_str() {
        "stabilizer-exact" => {
            let mut v = Vec::with_capacity(size * size);
            for qi in 0..size {
                for pi in 0..size {
                    v.push(parse_rational(cell(qi, pi))?);
                }
            }
            GridValues::Exact(v)
        }
        "dense" => {
            let mut v = Vec::with_capacity(size * size);
            for qi in 0..size {
                for pi in 0..size {
                    let s = cell(qi, pi);
                    v.push(s.parse::<f64>().map_err(|_| Error::Format(format!("not a number: {s:?}")))?);
                }
            }
            GridValues::Dense(v)
        }
        other => return Err(Error::Format(format!("unknown provenance {other:?}"))),
    };
    WignerGrid::new(spec, values, doc.net_fingerprint)
}

pub fn export_grid(grid: &WignerGrid, format: GridFormat) -> GridExport {
    let payload = match format {
        GridFormat::Csv => to_csv(grid),
        GridFormat::Json => to_json(grid),
        GridFormat::Ascii => to_ascii(grid),
    };
    GridExport { format, payload }
}
