use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::{json, Value};

use gfwigner::apps::bell::{self, BellKind, BellPattern};
use gfwigner::apps::{king, qec};
use gfwigner::export::{self, format_decimal, format_rational, GridFormat};
use gfwigner::gf2;
use gfwigner::net::{self, signs_to_string};
use gfwigner::phasespace::Striation;
use gfwigner::verify::{self, PropertyResult};
use gfwigner::{
    FieldSpec, Generator, GridValues, PauliTranslation, QuantumNet, Rational, StriationLabel, WignerGrid,
};

use crate::args::{Cli, Command, Common, NetArgs, ReportFormat, TableFormat, TextFormat};
use crate::config::RunConfig;
use crate::states::{self, StateInput};
use crate::{CliError, CliResult};

pub fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Field { common, table, format } => field(&common, table, format),
        Command::Rays { common, net, format } => rays(&common, &net, format),
        Command::Mub { common, net } => mub(&common, &net),
        Command::Uomega { common, format } => uomega(&common, format),
        Command::Wigner { common, net, state, format, decimal } => wigner(&common, &net, state, format, decimal),
        Command::Bell { common, net, state, all, format, verify } => bell(&common, &net, state, all, format, verify),
        Command::Qec { common, net, alpha, beta, family, format, verify } => {
            qec(&common, &net, &alpha, &beta, family, format, verify)
        }
        Command::Meanking { common, net, format, verify } => meanking(&common, &net, format, verify),
        Command::Verify { common, seed } => verify_cmd(&common, seed),
    }
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Internal(format!("stdout: {e}")))
        }
    }
}

fn emit_cfg(cfg: &RunConfig, text: &str) -> CliResult<()> {
    emit(cfg.output.as_deref(), text)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn snap(x: f64) -> f64 {
    if x.abs() < export::ZERO_SNAP {
        0.0
    } else {
        x
    }
}

fn complex_pair(z: Complex64) -> Value {
    json!([snap(z.re), snap(z.im)])
}

fn format_complex(z: Complex64) -> String {
    let (re, im) = (snap(z.re), snap(z.im));
    if im == 0.0 {
        format_decimal(re)
    } else if re == 0.0 {
        format!("{}i", format_decimal(im))
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", format_decimal(re), format_decimal(im.abs()))
    }
}

fn fraction(r: Rational) -> Value {
    Value::String(format_rational(r))
}

// ---- field ----

fn field(common: &Common, table: bool, format: TableFormat) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, None, None)?;
    let spec = &cfg.spec;
    let n = spec.n();
    let text = if table {
        let canonical = spec.axis_labels(Generator::Companion);
        let dual = spec.axis_labels(Generator::Transpose);
        let bits = |v: &u32| gf2::bit_string(*v, n);
        match format {
            TableFormat::Text => {
                let width = n.max("canonical".len());
                let mut s = format!("GF(2^{n})  pi(x) = {}\n", spec.polynomial());
                let _ = writeln!(s, "{:<width$}  dual", "canonical");
                for (c, d) in canonical.iter().zip(&dual) {
                    let _ = writeln!(s, "{:<width$}  {}", bits(c), bits(d));
                }
                s
            }
            TableFormat::Csv => {
                let mut s = String::from("canonical,dual\n");
                for (c, d) in canonical.iter().zip(&dual) {
                    let _ = writeln!(s, "{},{}", bits(c), bits(d));
                }
                s
            }
            TableFormat::Json => pretty(&json!({
                "n": n,
                "poly": spec.polynomial().to_bit_string(),
                "canonical": canonical.iter().map(bits).collect::<Vec<_>>(),
                "dual": dual.iter().map(bits).collect::<Vec<_>>(),
            })),
        }
    } else {
        let momentum: Vec<String> = spec.momentum_basis().into_iter().map(|x| spec.label(x)).collect();
        let powers: Vec<String> =
            spec.elements().skip(1).map(|x| gf2::bit_string(x.bits(), n)).collect();
        match format {
            TableFormat::Json => pretty(&json!({
                "n": n,
                "poly": spec.polynomial().to_bit_string(),
                "polynomial": spec.polynomial().to_string(),
                "momentum_basis": momentum,
                "momentum_scale": spec.label(spec.momentum_scale()),
                "powers": powers,
            })),
            TableFormat::Text | TableFormat::Csv => {
                let mut s = format!("GF(2^{n})  pi(x) = {}  (coefficients {})\n", spec.polynomial(), spec.polynomial().to_bit_string());
                let _ = writeln!(s, "momentum basis: {}", momentum.join(" "));
                let _ = writeln!(s, "momentum scale: {}", spec.label(spec.momentum_scale()));
                for (j, p) in powers.iter().enumerate() {
                    let _ = writeln!(s, "w^{j} = {p}");
                }
                s
            }
        }
    };
    emit_cfg(&cfg, &text)?;
    Ok(0)
}

// ---- rays ----

fn token_grid(spec: &FieldSpec, cell: impl Fn(usize, usize) -> String) -> Vec<String> {
    let size = spec.size();
    let labels: Vec<String> = spec.elements().map(|x| spec.label(x)).collect();
    let cells: Vec<Vec<String>> = (0..size).rev().map(|pi| (0..size).map(|qi| cell(qi, pi)).collect()).collect();
    let width = cells.iter().flatten().chain(labels.iter()).map(|c| c.len()).max().unwrap_or(1);
    let lw = labels.iter().map(|l| l.len()).max().unwrap_or(1);
    let mut rows: Vec<String> = cells
        .iter()
        .zip((0..size).rev())
        .map(|(row, pi)| {
            let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("{:>lw$} | {}", labels[pi], body.join(" "))
        })
        .collect();
    let axis: Vec<String> = labels.iter().map(|l| format!("{l:>width$}")).collect();
    rows.push(format!("{:>lw$}   {}", "", axis.join(" ")));
    rows
}

fn rays(common: &Common, net_args: &NetArgs, format: TextFormat) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, Some(net_args), None)?;
    let spec = &cfg.spec;
    let net = cfg.net("default")?;
    let size = spec.size();
    let overlay = |qi: usize, pi: usize| -> String {
        let pt = gfwigner::PhasePoint::new(spec.element_at(qi), spec.element_at(pi));
        if pt.is_origin() {
            "*".into()
        } else {
            net::ray_label_of(spec, pt).to_string()
        }
    };
    let text = match format {
        TextFormat::Text => {
            let mut s = format!("n = {}  pi(x) = {}  net {}\n", spec.n(), spec.polynomial(), net.fingerprint());
            for label in StriationLabel::all(spec) {
                let map = Striation::new(spec, label).line_map(spec);
                let gens: Vec<String> = net.generators(label).gens.iter().map(|g| g.letters()).collect();
                let _ = writeln!(
                    s,
                    "\nstriation {label}: generators {} signs {}",
                    gens.join(" "),
                    signs_to_string(net.signs(label), spec.n())
                );
                for row in token_grid(spec, |qi, pi| map[qi * size + pi].to_string()) {
                    let _ = writeln!(s, "{row}");
                }
            }
            let _ = writeln!(s, "\nrays (h, v, or slope exponent; * is the origin)");
            for row in token_grid(spec, overlay) {
                let _ = writeln!(s, "{row}");
            }
            s
        }
        TextFormat::Json => {
            let striations: Vec<Value> = StriationLabel::all(spec)
                .into_iter()
                .map(|label| {
                    let map = Striation::new(spec, label).line_map(spec);
                    let rows: Vec<Vec<usize>> =
                        (0..size).rev().map(|pi| (0..size).map(|qi| map[qi * size + pi]).collect()).collect();
                    json!({
                        "label": label.to_string(),
                        "generators": net.generators(label).gens.iter().map(|g| g.letters()).collect::<Vec<_>>(),
                        "signs": signs_to_string(net.signs(label), spec.n()),
                        "lines": rows,
                    })
                })
                .collect();
            let overlay_rows: Vec<Vec<String>> =
                (0..size).rev().map(|pi| (0..size).map(|qi| overlay(qi, pi)).collect()).collect();
            pretty(&json!({
                "n": spec.n(),
                "poly": spec.polynomial().to_bit_string(),
                "net_fingerprint": net.fingerprint(),
                "axis": spec.elements().map(|x| spec.label(x)).collect::<Vec<_>>(),
                "striations": striations,
                "overlay": overlay_rows,
            }))
        }
    };
    emit_cfg(&cfg, &text)?;
    Ok(0)
}

// ---- mub ----

fn mub(common: &Common, net_args: &NetArgs) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, Some(net_args), None)?;
    let spec = &cfg.spec;
    let net = cfg.net("covariant")?;
    let states = net::mub_states(&net)?;
    let size = spec.size();
    let report = net::mub_report(&states, size);
    // worst deviation per striation pair: Gram on the diagonal, 1/N off it
    let count = size + 1;
    let mut matrix = vec![vec![0.0f64; count]; count];
    for a in &states {
        for b in &states {
            let (i, j) = (a.label.index(), b.label.index());
            let ip = gfwigner::dense::inner(&a.vector, &b.vector);
            let dev = if i == j {
                let target = if a.line_index == b.line_index { 1.0 } else { 0.0 };
                (ip - Complex64::from(target)).norm()
            } else {
                (ip.norm_sqr() - 1.0 / size as f64).abs()
            };
            matrix[i][j] = matrix[i][j].max(dev);
        }
    }
    let bases: Vec<Value> = StriationLabel::all(spec)
        .into_iter()
        .map(|label| {
            let lines: Vec<Value> = states
                .iter()
                .filter(|s| s.label == label)
                .map(|s| {
                    json!({
                        "line": s.line_index,
                        "amplitudes": s.vector.iter().map(|&z| complex_pair(z)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({ "striation": label.to_string(), "lines": lines })
        })
        .collect();
    let doc = json!({
        "n": spec.n(),
        "poly": spec.polynomial().to_bit_string(),
        "net_fingerprint": net.fingerprint(),
        "bases": bases,
        "report": {
            "striations": StriationLabel::all(spec).iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "max_deviation": matrix.iter().map(|r| r.iter().map(|&x| format!("{x:.3e}")).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "max_cross_deviation": format!("{:.3e}", report.max_cross_deviation),
            "max_gram_deviation": format!("{:.3e}", report.max_gram_deviation),
            "unbiased": report.max_cross_deviation < verify::TOL && report.max_gram_deviation < verify::TOL,
        },
    });
    emit_cfg(&cfg, &pretty(&doc))?;
    Ok(0)
}

// ---- uomega ----

fn uomega(common: &Common, format: TextFormat) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, None, None)?;
    let spec = &cfg.spec;
    let n = spec.n();
    let gates = net::u_omega_circuit(spec);
    let singles: Vec<PauliTranslation> = (0..n)
        .flat_map(|q| [PauliTranslation::new(n, 1 << q, 0), PauliTranslation::new(n, 0, 1 << q)])
        .collect();
    let images: Vec<(PauliTranslation, PauliTranslation)> =
        singles.into_iter().map(|t| (t.clone(), net::u_omega_conjugate(spec, &t))).collect();
    let labels: Vec<(StriationLabel, StriationLabel)> =
        StriationLabel::all(spec).into_iter().map(|l| (l, net::u_omega_label(spec, l))).collect();
    let text = match format {
        TextFormat::Text => {
            let mut s = format!("n = {n}  pi(x) = {}\n\ngates (in order):\n", spec.polynomial());
            if gates.is_empty() {
                s.push_str("  (identity)\n");
            }
            for g in &gates {
                let _ = writeln!(s, "  {g}");
            }
            s.push_str("\nconjugation U T U^dagger:\n");
            for (t, u) in &images {
                let _ = writeln!(s, "  {} -> {u}", t.letters());
            }
            s.push_str("\nstriations:\n");
            for (a, b) in &labels {
                let _ = writeln!(s, "  {a} -> {b}");
            }
            s
        }
        TextFormat::Json => pretty(&json!({
            "n": n,
            "poly": spec.polynomial().to_bit_string(),
            "gates": gates.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "conjugation": images.iter().map(|(t, u)| json!([t.letters(), u.to_string()])).collect::<Vec<_>>(),
            "striations": labels.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
        })),
    };
    emit_cfg(&cfg, &text)?;
    Ok(0)
}

// ---- wigner ----

fn to_decimal(grid: &WignerGrid) -> CliResult<WignerGrid> {
    Ok(WignerGrid::new(grid.spec_arc().clone(), GridValues::Dense(grid.to_f64()), grid.net_fingerprint().to_string())?)
}

fn render(grid: &WignerGrid, format: ReportFormat) -> String {
    export::export_grid(grid, GridFormat::from(format)).payload
}

fn wigner(
    common: &Common,
    net_args: &NetArgs,
    state: Option<String>,
    format: Option<ReportFormat>,
    decimal: bool,
) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, Some(net_args), None)?;
    let format = cfg.format(format, ReportFormat::Csv)?;
    let name = state
        .or_else(|| cfg.state.clone())
        .ok_or_else(|| CliError::Validation("--state is required".into()))?;
    let net = cfg.net("default")?;
    let input = states::resolve(&name, &cfg.spec)?;
    let mut grid = input.wigner(&net)?;
    if decimal {
        grid = to_decimal(&grid)?;
    }
    emit_cfg(&cfg, &render(&grid, format))?;
    Ok(0)
}

// ---- suites ----

fn suite_text(results: &[PropertyResult]) -> (String, bool) {
    let mut s = String::new();
    for r in results {
        if r.passed {
            let _ = writeln!(s, "PASS {}", r.name);
        } else {
            let _ = writeln!(s, "FAIL {}: {}", r.name, r.detail);
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let _ = writeln!(s, "{} properties, {failed} failed", results.len());
    (s, failed == 0)
}

fn run_suite(spec: &Arc<FieldSpec>, seed: u64) -> CliResult<(String, bool)> {
    Ok(suite_text(&verify::run_suite(spec.clone(), seed)?))
}

fn verify_cmd(common: &Common, seed: u64) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, None, None)?;
    let seed = cfg.seed.unwrap_or(seed);
    let (text, ok) = run_suite(&cfg.spec, seed)?;
    emit_cfg(&cfg, &text)?;
    Ok(if ok { 0 } else { 1 })
}

/// Append the suite to a report; the exit code reflects its outcome.
fn with_suite(cfg: &RunConfig, verify: bool, mut text: String) -> CliResult<i32> {
    let mut code = 0;
    if verify {
        let (suite, ok) = run_suite(&cfg.spec, cfg.seed.unwrap_or(1))?;
        text.push_str("\ninvariant suite:\n");
        text.push_str(&suite);
        if !ok {
            code = 1;
        }
    }
    emit_cfg(cfg, &text)?;
    Ok(code)
}

/// For JSON reports, the suite goes in as a field.
fn with_suite_json(cfg: &RunConfig, verify: bool, mut doc: Value) -> CliResult<i32> {
    let mut code = 0;
    if verify {
        let results = verify::run_suite(cfg.spec.clone(), cfg.seed.unwrap_or(1))?;
        if results.iter().any(|r| !r.passed) {
            code = 1;
        }
        doc["verify"] = serde_json::to_value(&results).expect("results serialize");
    }
    emit_cfg(cfg, &pretty(&doc))?;
    Ok(code)
}

fn grid_json(grid: &WignerGrid) -> Value {
    serde_json::to_value(export::to_document(grid)).expect("document serializes")
}

// ---- bell ----

fn bell(
    common: &Common,
    net_args: &NetArgs,
    state: Option<String>,
    all: bool,
    format: Option<ReportFormat>,
    verify: bool,
) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, Some(net_args), Some(2))?;
    let format = cfg.format(format, ReportFormat::Ascii)?;
    if all {
        return bell_all(&cfg, format, verify);
    }
    let name = state.or_else(|| cfg.state.clone()).unwrap_or_else(|| BellKind::PhiPlus.name().to_string());
    let kind: BellKind = name.parse().map_err(|e: gfwigner::Error| CliError::Validation(e.to_string()))?;
    let net = cfg.net("default")?;
    let grid = StateInput::Stabilizer(kind.stabilizer()).wigner(&net)?;
    let params = bell::bell_params(&grid).ok();
    let pattern = match (kind, &params) {
        (BellKind::PhiPlus, Some(p)) => BellPattern::classify(p),
        _ => None,
    };
    match format {
        ReportFormat::Json => {
            let mut doc = json!({ "state": kind.name(), "grid": grid_json(&grid) });
            if let Some(p) = params {
                doc["params"] = json!({"a": fraction(p.a), "b": fraction(p.b), "c": fraction(p.c), "d": fraction(p.d)});
            }
            if let Some(p) = pattern {
                doc["pattern"] = json!(pattern_name(p));
            }
            with_suite_json(&cfg, verify, doc)
        }
        ReportFormat::Csv => with_suite(&cfg, verify, render(&grid, format)),
        ReportFormat::Ascii => {
            let mut s = format!("{} under net {}\n", kind.name(), net.fingerprint());
            s.push_str(&render(&grid, format));
            if let Some(p) = params {
                let _ = writeln!(
                    s,
                    "a = {}  b = {}  c = {}  d = {}",
                    format_rational(p.a),
                    format_rational(p.b),
                    format_rational(p.c),
                    format_rational(p.d)
                );
            }
            if let Some(p) = pattern {
                let _ = writeln!(s, "pattern: {}", pattern_name(p));
            }
            with_suite(&cfg, verify, s)
        }
    }
}

fn pattern_name(p: BellPattern) -> &'static str {
    match p {
        BellPattern::Concentrated => "concentrated",
        BellPattern::Spread => "spread",
    }
}

fn bell_all(cfg: &RunConfig, format: ReportFormat, verify: bool) -> CliResult<i32> {
    let set = bell::bell_wigner_solutions(cfg.spec.clone())?;
    let counts = [BellPattern::Concentrated, BellPattern::Spread].map(|p| (pattern_name(p), set.count(p)));
    let sign_str = |s: &[u32]| s.iter().map(|&x| signs_to_string(x, 2)).collect::<Vec<_>>().join(" ");
    match format {
        ReportFormat::Json => {
            let rows: Vec<Value> = set
                .solutions
                .iter()
                .map(|s| {
                    json!({
                        "diagonal_signs": s.diagonal_signs.iter().map(|&x| signs_to_string(x, 2)).collect::<Vec<_>>(),
                        "fingerprint": s.fingerprint,
                        "params": [fraction(s.params.a), fraction(s.params.b), fraction(s.params.c), fraction(s.params.d)],
                        "pattern": pattern_name(s.pattern),
                    })
                })
                .collect();
            let doc = json!({
                "nets": rows.len(),
                "counts": counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "solutions": rows,
            });
            with_suite_json(cfg, verify, doc)
        }
        ReportFormat::Csv => {
            let mut s = String::from("slope0,slope1,slope2,a,b,c,d,pattern\n");
            for sol in &set.solutions {
                let signs: Vec<String> = sol.diagonal_signs.iter().map(|&x| signs_to_string(x, 2)).collect();
                let p = sol.params.as_array().map(format_rational);
                let _ = writeln!(s, "{},{},{}", signs.join(","), p.join(","), pattern_name(sol.pattern));
            }
            with_suite(cfg, verify, s)
        }
        ReportFormat::Ascii => {
            let mut s = String::from("diagonal signs (slope 0 1 2)  a b c d  pattern\n");
            for sol in &set.solutions {
                let p = sol.params.as_array().map(format_rational);
                let _ = writeln!(s, "{}  {}  {}", sign_str(&sol.diagonal_signs), p.join(" "), pattern_name(sol.pattern));
            }
            let _ = writeln!(s, "{} nets: {} {}, {} {}", set.solutions.len(), counts[0].0, counts[0].1, counts[1].0, counts[1].1);
            with_suite(cfg, verify, s)
        }
    }
}

// ---- qec ----

fn parse_amplitude(s: &str, flag: &str) -> CliResult<Complex64> {
    let bad = || CliError::Validation(format!("{flag} expects re or re,im, got {s:?}"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad);
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(bad()),
    }
}

fn params_strings(p: &qec::CodeParams) -> Vec<String> {
    p.0.iter().map(|&r| format_rational(r)).collect()
}

fn qec(
    common: &Common,
    net_args: &NetArgs,
    alpha: &str,
    beta: &str,
    family: bool,
    format: Option<ReportFormat>,
    verify: bool,
) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, Some(net_args), Some(3))?;
    let format = cfg.format(format, ReportFormat::Ascii)?;
    let net = cfg.net("qec")?;
    if family {
        return qec_family(&cfg, &net, format, verify);
    }
    let (a, b) = (parse_amplitude(alpha, "--alpha")?, parse_amplitude(beta, "--beta")?);
    if a.norm_sqr() + b.norm_sqr() < 1e-24 {
        return Err(CliError::Validation("--alpha and --beta are both zero".into()));
    }
    // basis logical states are stabilizer states and take the exact path
    let grid = if b == Complex64::from(0.0) {
        states::resolve("qec_logical_0", &cfg.spec)?.wigner(&net)?
    } else if a == Complex64::from(0.0) {
        states::resolve("qec_logical_1", &cfg.spec)?.wigner(&net)?
    } else {
        qec::code_wigner(a, b, &net)?
    };
    let params = qec::code_params(&grid).ok();
    let deviation = qec::printed_column_deviation(&grid, a, b)?;
    match format {
        ReportFormat::Json => {
            let mut doc = json!({
                "alpha": complex_pair(a),
                "beta": complex_pair(b),
                "grid": grid_json(&grid),
                "printed_column_deviation": format!("{deviation:.3e}"),
            });
            if let Some(p) = &params {
                doc["params"] = json!(params_strings(p));
            }
            with_suite_json(&cfg, verify, doc)
        }
        ReportFormat::Csv => with_suite(&cfg, verify, render(&grid, format)),
        ReportFormat::Ascii => {
            let mut s = format!(
                "alpha = {}  beta = {}  net {}\n",
                format_complex(a),
                format_complex(b),
                net.fingerprint()
            );
            s.push_str(&render(&grid, format));
            if let Some(p) = &params {
                let named: Vec<String> =
                    qec::PARAM_NAMES.iter().zip(params_strings(p)).map(|(c, v)| format!("{c} = {v}")).collect();
                let _ = writeln!(s, "{}", named.join("  "));
            }
            let _ = writeln!(s, "q = 0, 1 columns vs f1..f4: max deviation {deviation:.3e}");
            with_suite(&cfg, verify, s)
        }
    }
}

fn qec_family(cfg: &RunConfig, net: &QuantumNet, format: ReportFormat, verify: bool) -> CliResult<i32> {
    let family = qec::code_solution_family(net)?;
    let covariant = qec::covariant_solutions(&family, cfg.spec.clone())?;
    let rows: Vec<(Vec<String>, bool)> =
        family.iter().map(|p| (params_strings(p), covariant.contains(p))).collect();
    match format {
        ReportFormat::Json => {
            let doc = json!({
                "solutions": rows.iter().map(|(p, c)| json!({"params": p, "covariant": c})).collect::<Vec<_>>(),
                "count": family.len(),
                "covariant_count": covariant.len(),
            });
            with_suite_json(cfg, verify, doc)
        }
        ReportFormat::Csv => {
            let mut s = String::from("a,b,c,d,e,f,g,h,covariant\n");
            for (p, c) in &rows {
                let _ = writeln!(s, "{},{c}", p.join(","));
            }
            with_suite(cfg, verify, s)
        }
        ReportFormat::Ascii => {
            let width = rows.iter().flat_map(|(p, _)| p.iter()).map(|v| v.len()).max().unwrap_or(1);
            let mut s = String::new();
            let header: Vec<String> = qec::PARAM_NAMES.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(s, "{}  covariant", header.join(" "));
            for (p, c) in &rows {
                let cells: Vec<String> = p.iter().map(|v| format!("{v:>width$}")).collect();
                let _ = writeln!(s, "{}  {}", cells.join(" "), if *c { "yes" } else { "no" });
            }
            let _ = writeln!(s, "{} solutions, {} covariant", family.len(), covariant.len());
            with_suite(cfg, verify, s)
        }
    }
}

// ---- meanking ----

fn meanking(common: &Common, net_args: &NetArgs, format: Option<ReportFormat>, verify: bool) -> CliResult<i32> {
    let cfg = RunConfig::resolve(common, Some(net_args), Some(2))?;
    let format = cfg.format(format, ReportFormat::Ascii)?;
    let net = cfg.net("meanking")?;
    let solution = king::mean_king_solve(&net)?;
    let report = king::mean_king_simulate(&solution)?;
    let grid = king::phi1_wigner(&net)?;
    let sums = king::line_sums(&grid)?;
    let caption = king::caption_comparison(&grid).ok();
    let reflection = king::reflection_defect(&grid);
    match format {
        ReportFormat::Csv => with_suite(&cfg, verify, render(&grid, format)),
        ReportFormat::Json => {
            let table: Vec<Value> = solution
                .table
                .iter()
                .map(|((obs, i), k)| json!({"observable": obs.to_string(), "outcome": i + 1, "inferred": if *k == 0 { 1 } else { -1 }}))
                .collect();
            let mut doc = json!({
                "net_fingerprint": net.fingerprint(),
                "basis": solution.basis.iter().map(|v| v.iter().map(|&z| complex_pair(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "gram_deviation": format!("{:.3e}", solution.gram_deviation()),
                "table": table,
                "simulation": {
                    "branches": report.branches,
                    "success_probability": format_decimal(report.success_probability),
                },
                "line_sums": {
                    "zero_lines": sums.zero_lines.map(fraction),
                    "rays": sums.rays.map(fraction),
                    "remaining": sums.remaining.map(fraction),
                },
                "reflection_defect": format!("{reflection:.3e}"),
                "grid": grid_json(&grid),
            });
            if let Some(c) = &caption {
                doc["caption"] = json!(c
                    .iter()
                    .map(|e| json!({"labels": e.labels, "printed": fraction(e.printed), "derived": fraction(e.derived), "consistent": e.consistent}))
                    .collect::<Vec<_>>());
            }
            with_suite_json(&cfg, verify, doc)
        }
        ReportFormat::Ascii => {
            let mut s = format!("mean king basis under net {} (amplitudes of |00> |01> |10> |11>)\n", net.fingerprint());
            for (i, v) in solution.basis.iter().enumerate() {
                let amps: Vec<String> = v.iter().map(|&z| format_complex(z)).collect();
                let _ = writeln!(s, "  phi{}: {}", i + 1, amps.join("  "));
            }
            let _ = writeln!(s, "gram deviation {:.3e}", solution.gram_deviation());
            s.push_str("retrodiction (outcome -> inferred eigenvalue):\n");
            for obs in king::OBSERVABLES {
                let cells: Vec<String> = (0..4)
                    .map(|i| {
                        let k = solution.table.get(&(obs, i)).copied();
                        format!("phi{} {}", i + 1, match k {
                            Some(0) => "+1",
                            Some(_) => "-1",
                            None => "?",
                        })
                    })
                    .collect();
                let _ = writeln!(s, "  {obs}: {}", cells.join(", "));
            }
            let _ = writeln!(
                s,
                "simulation: {} branches, success probability {}",
                report.branches,
                format_decimal(report.success_probability)
            );
            let show = |a: [Rational; 3]| a.map(format_rational).join(" ");
            let _ = writeln!(s, "line sums v h d: zero lines {}; rays {}; other lines {}", show(sums.zero_lines), show(sums.rays), show(sums.remaining));
            s.push_str("W(phi1):\n");
            s.push_str(&render(&grid, format));
            let exact = gfwigner::apps::exact_values(&grid, 16)?;
            for pi in (0..4).rev() {
                let row: Vec<String> = (0..4).map(|qi| format!("{:>5}", format_rational(exact[qi * 4 + pi]))).collect();
                let _ = writeln!(s, "  {}", row.join(" "));
            }
            if let Some(c) = &caption {
                s.push_str("caption values (printed vs derived):\n");
                for e in c {
                    let _ = writeln!(
                        s,
                        "  {:<8} printed {:>5}  derived {:>5}  {}",
                        e.labels,
                        format_rational(e.printed),
                        format_rational(e.derived),
                        if e.consistent { "ok" } else { "differs" }
                    );
                }
            }
            let _ = writeln!(s, "W(q, p) - W(p, q): max {reflection:.3e}");
            with_suite(&cfg, verify, s)
        }
    }
}
