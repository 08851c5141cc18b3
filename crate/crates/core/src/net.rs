//! Quantum nets: which state sits on each line of phase space.
//!
//! A ray's state is the joint eigenstate of its `n` generators with chosen
//! eigenvalues `eps_k`; every other line gets the translated ray state. The
//! whole net is summarized by the sign function `f(beta) = Tr(T_beta P(ray))`,
//! which the Wigner module consumes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dense::{self, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::galois::{FieldElement, FieldSpec, PolyTable, Polynomial};
use crate::pauli::{self, Gate, PauliTranslation};
use crate::phasespace::{BinaryPoint, Line, PhasePoint, StriationLabel};

/// Eigenvalue choice for the generators of one ray: bit `k` set means
/// `eps_k = -1`.
pub type Signs = u32;

/// Nets with at most this many qubits keep a full table of `f`.
const F_CACHE_MAX_QUBITS: usize = 8;

/// The ray point whose free coordinate is `w^k`.
fn generator_point(spec: &FieldSpec, label: StriationLabel, k: usize) -> PhasePoint {
    let wk = FieldElement::from_bits(1 << k);
    match label {
        StriationLabel::H => PhasePoint::new(wk, FieldElement::ZERO),
        StriationLabel::V => PhasePoint::new(FieldElement::ZERO, wk),
        StriationLabel::Slope(l) => PhasePoint::new(wk, spec.mul(spec.omega_pow(l as i64), wk)),
    }
}

/// Striation whose ray contains a nonzero point.
pub fn ray_label_of(spec: &FieldSpec, pt: PhasePoint) -> StriationLabel {
    match (spec.log(pt.q), spec.log(pt.p)) {
        (_, None) => StriationLabel::H,
        (None, _) => StriationLabel::V,
        (Some(lq), Some(lp)) => {
            let order = spec.group_order();
            StriationLabel::Slope((lp + order - lq) % order)
        }
    }
}

/// Coordinates of a ray point in terms of the ray generators.
fn generator_coefficients(label: StriationLabel, pt: PhasePoint) -> u32 {
    match label {
        StriationLabel::V => pt.p.bits(),
        _ => pt.q.bits(),
    }
}

/// The `n` commuting translations generating one ray's class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayGenerators {
    pub label: StriationLabel,
    pub gens: Vec<PauliTranslation>,
}

impl RayGenerators {
    pub fn new(spec: &FieldSpec, label: StriationLabel) -> Self {
        let gens = (0..spec.n())
            .map(|k| {
                PauliTranslation::from_point(spec.n(), generator_point(spec, label, k).to_binary(spec))
            })
            .collect();
        RayGenerators { label, gens }
    }
}

/// `(1/2^n) prod_k (I + eps_k G_k)`.
pub fn ray_projector(gens: &RayGenerators, signs: Signs) -> Result<CMatrix> {
    let n = gens.gens.len();
    dense::check_dense(n)?;
    for (i, a) in gens.gens.iter().enumerate() {
        for b in &gens.gens[i + 1..] {
            if !a.commutes(b) {
                return Err(Error::NonCommutingGenerators);
            }
        }
    }
    let dim = 1usize << n;
    let id = dense::identity(dim);
    let mut p = id.clone();
    for (k, g) in gens.gens.iter().enumerate() {
        let eps = if (signs >> k) & 1 == 1 { -1.0 } else { 1.0 };
        let factor = (&id + g.to_matrix()? * dense::ONE.scale(eps)) * dense::ONE.scale(0.5);
        p = p * factor;
    }
    Ok(p)
}

/// Eigenvalue of `T_beta` on the ray state fixed by `signs`; `beta` must lie
/// on the ray `label`.
fn ray_sign(spec: &FieldSpec, label: StriationLabel, signs: Signs, beta: PhasePoint) -> i8 {
    let c = generator_coefficients(label, beta);
    let n = spec.n();
    let mut product = PauliTranslation::identity(n);
    for k in (0..n).filter(|k| (c >> k) & 1 == 1) {
        let g = PauliTranslation::from_point(n, generator_point(spec, label, k).to_binary(spec));
        product = product.compose(&g).expect("same size");
    }
    // prod G_k = i^phi T_beta with phi in {0, 2}
    let phi = product.leftover_phase();
    debug_assert!(phi % 2 == 0, "product of commuting hermitian translations");
    let mut f = if phi == 2 { -1 } else { 1 };
    if (signs & c).count_ones() % 2 == 1 {
        f = -f;
    }
    f
}

/// Gate list of the squeezing unitary `|x> -> |x M>`, in application order.
pub fn u_omega_circuit(spec: &FieldSpec) -> Vec<Gate> {
    let n = spec.n();
    let mut gates: Vec<Gate> = (1..n).map(|j| Gate::Swap(0, j)).collect();
    let r = spec.polynomial();
    gates.extend((1..n).filter(|&j| r.coefficient(j) == 1).map(|j| Gate::Cnot { control: 0, target: j }));
    gates
}

pub fn u_omega_matrix(spec: &FieldSpec) -> Result<CMatrix> {
    pauli::circuit_matrix(spec.n(), &u_omega_circuit(spec))
}

/// `U T U^dagger` for the squeezing unitary.
pub fn u_omega_conjugate(spec: &FieldSpec, t: &PauliTranslation) -> PauliTranslation {
    t.conjugate_by_circuit(&u_omega_circuit(spec))
}

/// Where the squeezing map sends a striation.
pub fn u_omega_label(spec: &FieldSpec, label: StriationLabel) -> StriationLabel {
    match label {
        StriationLabel::Slope(l) => {
            let order = spec.group_order();
            StriationLabel::Slope((l + 2 * order - 2) % order)
        }
        other => other,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetMode {
    /// Every ray chosen freely.
    Independent,
    /// h, v and the ray of slope 0 chosen; the other diagonal rays follow from
    /// covariance under the squeezing unitary.
    Covariant,
}

#[derive(Clone)]
pub struct QuantumNet {
    spec: Arc<FieldSpec>,
    mode: NetMode,
    /// Per striation index, after covariant derivation.
    signs: Vec<Signs>,
    f_cache: Option<Vec<i8>>,
}

impl fmt::Debug for QuantumNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuantumNet")
            .field("n", &self.spec.n())
            .field("mode", &self.mode)
            .field("signs", &self.signs)
            .finish()
    }
}

impl PartialEq for QuantumNet {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.signs == other.signs
    }
}

impl QuantumNet {
    /// One sign vector per striation, in striation index order.
    pub fn independent(spec: Arc<FieldSpec>, signs: Vec<Signs>) -> Result<Self> {
        if signs.len() != spec.size() + 1 {
            return Err(Error::InvalidNet(format!(
                "expected {} sign vectors, got {}",
                spec.size() + 1,
                signs.len()
            )));
        }
        Self::check_signs(&spec, &signs)?;
        Ok(Self::finish(spec, NetMode::Independent, signs))
    }

    /// Signs for h, v and slope 0; the remaining diagonal rays are
    /// `P(u lambda) = U P(lambda) U^dagger`.
    pub fn covariant(spec: Arc<FieldSpec>, h: Signs, v: Signs, slope0: Signs) -> Result<Self> {
        Self::check_signs(&spec, &[h, v, slope0])?;
        let mut signs = vec![0; spec.size() + 1];
        signs[0] = h;
        signs[1] = v;
        let circuit = u_omega_circuit(&spec);
        let order = spec.group_order();
        let mut current = StriationLabel::Slope(0);
        signs[current.index()] = slope0;
        for _ in 1..order {
            let next = u_omega_label(&spec, current);
            let mut next_signs = 0;
            for k in 0..spec.n() {
                let g = PauliTranslation::from_point(
                    spec.n(),
                    generator_point(&spec, next, k).to_binary(&spec),
                );
                let pre = g.conjugate_by_circuit_inverse(&circuit);
                let pre_point = pre.point().to_point(&spec);
                debug_assert_eq!(ray_label_of(&spec, pre_point), current);
                let mut eig = ray_sign(&spec, current, signs[current.index()], pre_point);
                if pre.leftover_phase() == 2 {
                    eig = -eig;
                }
                if eig < 0 {
                    next_signs |= 1 << k;
                }
            }
            signs[next.index()] = next_signs;
            current = next;
        }
        Ok(Self::finish(spec, NetMode::Covariant, signs))
    }

    /// All generator eigenvalues +1.
    pub fn all_plus(spec: Arc<FieldSpec>) -> Self {
        let signs = vec![0; spec.size() + 1];
        Self::finish(spec, NetMode::Independent, signs)
    }

    /// Covariant net with all-(+1) seeds.
    pub fn covariant_all_plus(spec: Arc<FieldSpec>) -> Self {
        Self::covariant(spec, 0, 0, 0).expect("zero signs are valid")
    }

    /// The `N^(N-1)` independent nets with h and v fixed; only for `n <= 2`.
    pub fn enumerate_diagonal(spec: Arc<FieldSpec>, h: Signs, v: Signs) -> Result<Vec<Self>> {
        if spec.n() > 2 {
            return Err(Error::UnsupportedSize { got: spec.n(), max: 2 });
        }
        let size = spec.size();
        let rays = size - 1;
        let total = size.pow(rays as u32);
        (0..total)
            .map(|mut code| {
                let mut signs = vec![h, v];
                for _ in 0..rays {
                    signs.push((code % size) as Signs);
                    code /= size;
                }
                Self::independent(spec.clone(), signs)
            })
            .collect()
    }

    fn check_signs(spec: &FieldSpec, signs: &[Signs]) -> Result<()> {
        let limit = 1u32 << spec.n();
        match signs.iter().find(|&&s| s >= limit) {
            Some(s) => Err(Error::InvalidNet(format!("sign mask {s:#b} exceeds {} generators", spec.n()))),
            None => Ok(()),
        }
    }

    fn finish(spec: Arc<FieldSpec>, mode: NetMode, signs: Vec<Signs>) -> Self {
        let mut net = QuantumNet { spec, mode, signs, f_cache: None };
        if net.spec.n() <= F_CACHE_MAX_QUBITS {
            let n = net.spec.n();
            let cache = (0..1u32 << (2 * n))
                .map(|key| net.compute_f(BinaryPoint::new(key >> n, key & ((1 << n) - 1))))
                .collect();
            net.f_cache = Some(cache);
        }
        net
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn mode(&self) -> NetMode {
        self.mode
    }

    pub fn signs(&self, label: StriationLabel) -> Signs {
        self.signs[label.index()]
    }

    pub fn all_signs(&self) -> &[Signs] {
        &self.signs
    }

    /// `f(beta)` in `{+1, -1}`; `f(0) = 1`.
    pub fn f(&self, beta: BinaryPoint) -> i8 {
        match &self.f_cache {
            Some(cache) => cache[((beta.qbits as usize) << self.n()) | beta.pbits as usize],
            None => self.compute_f(beta),
        }
    }

    pub fn f_point(&self, beta: PhasePoint) -> i8 {
        self.f(beta.to_binary(&self.spec))
    }

    fn compute_f(&self, beta: BinaryPoint) -> i8 {
        if beta.is_zero() {
            return 1;
        }
        let pt = beta.to_point(&self.spec);
        let label = ray_label_of(&self.spec, pt);
        ray_sign(&self.spec, label, self.signs[label.index()], pt)
    }

    pub fn generators(&self, label: StriationLabel) -> RayGenerators {
        RayGenerators::new(&self.spec, label)
    }

    pub fn ray_projector(&self, label: StriationLabel) -> Result<CMatrix> {
        ray_projector(&self.generators(label), self.signs(label))
    }

    pub fn ray_state(&self, label: StriationLabel) -> Result<CVector> {
        Ok(dense::state_of_projector(&self.ray_projector(label)?))
    }

    /// `T_d P(ray) T_d^dagger` for the line's displacement `d`.
    pub fn line_projector(&self, line: &Line) -> Result<CMatrix> {
        let ray = self.ray_projector(line.label(&self.spec))?;
        Ok(self.displacement_translation(line).conjugate_matrix(&ray))
    }

    pub fn line_state(&self, line: &Line) -> Result<CVector> {
        let ray = self.ray_state(line.label(&self.spec))?;
        Ok(dense::fix_phase(&self.displacement_translation(line).apply(&ray)))
    }

    fn displacement_translation(&self, line: &Line) -> PauliTranslation {
        PauliTranslation::from_point(self.n(), line.displacement(&self.spec).to_binary(&self.spec))
    }

    /// Short stable hash of the field and the sign choices.
    pub fn fingerprint(&self) -> String {
        let mut bytes = Vec::new();
        bytes.push(self.n() as u8);
        bytes.extend_from_slice(self.spec.polynomial().to_bit_string().as_bytes());
        for s in &self.signs {
            bytes.extend_from_slice(&s.to_le_bytes());
        }
        format!("{:016x}", fnv1a(&bytes))
    }

    pub fn to_config(&self) -> NetConfig {
        let n = self.n();
        let labels: Vec<StriationLabel> = match self.mode {
            NetMode::Independent => StriationLabel::all(&self.spec),
            NetMode::Covariant => vec![StriationLabel::H, StriationLabel::V, StriationLabel::Slope(0)],
        };
        let signs = labels
            .into_iter()
            .map(|l| (l.to_string(), signs_to_string(self.signs(l), n)))
            .collect();
        NetConfig {
            name: None,
            n,
            poly: Some(self.spec.polynomial().to_bit_string()),
            mode: self.mode,
            signs,
            assumptions: None,
        }
    }

    /// `f` on every nonzero point, keyed by the Pauli letters of `T_beta`.
    pub fn f_table(&self) -> BTreeMap<String, i8> {
        let n = self.n();
        (1..1u32 << (2 * n))
            .map(|key| {
                let beta = BinaryPoint::new(key >> n, key & ((1 << n) - 1));
                (PauliTranslation::from_point(n, beta).letters(), self.f(beta))
            })
            .collect()
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// `"+-+"` style; generator 0 first.
pub fn signs_to_string(signs: Signs, n: usize) -> String {
    (0..n).map(|k| if (signs >> k) & 1 == 1 { '-' } else { '+' }).collect()
}

pub fn parse_signs(s: &str, n: usize) -> Result<Signs> {
    if s.chars().count() != n {
        return Err(Error::InvalidNet(format!("sign string {s:?} should have {n} entries")));
    }
    s.chars().enumerate().try_fold(0, |acc, (k, c)| match c {
        '+' => Ok(acc),
        '-' => Ok(acc | 1 << k),
        _ => Err(Error::InvalidNet(format!("unexpected character {c:?} in sign string"))),
    })
}

/// JSON description of a net.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    /// Polynomial coefficients low to high; built-in table when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    pub mode: NetMode,
    /// Striation label -> sign string; missing striations default to all `+`.
    #[serde(default)]
    pub signs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assumptions: Option<String>,
}

impl NetConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("net config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn field(&self, table: &PolyTable) -> Result<FieldSpec> {
        match &self.poly {
            Some(p) => {
                let poly = Polynomial::parse(p)?;
                if poly.degree() != self.n {
                    return Err(Error::DegreeMismatch { expected: self.n + 1, got: poly.degree() + 1 });
                }
                FieldSpec::with_polynomial(poly)
            }
            None => FieldSpec::from_table(self.n, table),
        }
    }

    pub fn build(&self, table: &PolyTable) -> Result<QuantumNet> {
        let spec = Arc::new(self.field(table)?);
        self.build_on(spec)
    }

    pub fn build_on(&self, spec: Arc<FieldSpec>) -> Result<QuantumNet> {
        if spec.n() != self.n {
            return Err(Error::InvalidNet(format!("config is for n = {}, field has n = {}", self.n, spec.n())));
        }
        let mut signs = vec![0; spec.size() + 1];
        for (key, value) in &self.signs {
            let label: StriationLabel = key.parse()?;
            if label.index() > spec.size() {
                return Err(Error::InvalidNet(format!("no striation {key} for n = {}", self.n)));
            }
            if self.mode == NetMode::Covariant && label.index() > 2 {
                return Err(Error::InvalidNet(format!(
                    "covariant nets fix only h, v and 0; got {key}"
                )));
            }
            signs[label.index()] = parse_signs(value, self.n)?;
        }
        match self.mode {
            NetMode::Independent => QuantumNet::independent(spec, signs),
            NetMode::Covariant => QuantumNet::covariant(spec, signs[0], signs[1], signs[2]),
        }
    }
}

const PRESET_QEC: &str = include_str!("../presets/qec.json");
const PRESET_MEANKING: &str = include_str!("../presets/meanking.json");

pub const PRESET_NAMES: [&str; 4] = ["default", "covariant", "qec", "meanking"];

/// Named nets. `default` and `covariant` exist for every `n`; `qec` needs
/// `n = 3` and `meanking` needs `n = 2`.
pub fn preset_config(name: &str, n: usize) -> Result<NetConfig> {
    let cfg = match name {
        "default" => NetConfig {
            name: Some("default".into()),
            n,
            poly: None,
            mode: NetMode::Independent,
            signs: BTreeMap::new(),
            assumptions: None,
        },
        "covariant" => NetConfig {
            name: Some("covariant".into()),
            n,
            poly: None,
            mode: NetMode::Covariant,
            signs: BTreeMap::new(),
            assumptions: None,
        },
        "qec" => NetConfig::from_json(PRESET_QEC)?,
        "meanking" => NetConfig::from_json(PRESET_MEANKING)?,
        other => return Err(Error::InvalidNet(format!("unknown preset {other:?}"))),
    };
    if cfg.n != n {
        return Err(Error::InvalidNet(format!("preset {name} is defined for n = {}, not {n}", cfg.n)));
    }
    Ok(cfg)
}

pub fn preset(name: &str, spec: Arc<FieldSpec>) -> Result<QuantumNet> {
    preset_config(name, spec.n())?.build_on(spec)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MubState {
    pub label: StriationLabel,
    pub line_index: usize,
    pub vector: CVector,
}

/// All `N (N + 1)` line states, striation by striation, lines in offset order.
pub fn mub_states(net: &QuantumNet) -> Result<Vec<MubState>> {
    let spec = net.spec();
    dense::check_dense(spec.n())?;
    let mut out = Vec::with_capacity(spec.size() * (spec.size() + 1));
    for label in StriationLabel::all(spec) {
        let ray = net.ray_state(label)?;
        for (line_index, c) in spec.elements().enumerate() {
            let line = Line::in_striation(spec, label, c);
            let d = PauliTranslation::from_point(spec.n(), line.displacement(spec).to_binary(spec));
            out.push(MubState { label, line_index, vector: dense::fix_phase(&d.apply(&ray)) });
        }
    }
    Ok(out)
}

/// Worst deviations from mutual unbiasedness and from orthonormality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MubReport {
    pub max_cross_deviation: f64,
    pub max_gram_deviation: f64,
}

pub fn mub_report(states: &[MubState], dim: usize) -> MubReport {
    let target = 1.0 / dim as f64;
    let mut report = MubReport { max_cross_deviation: 0.0, max_gram_deviation: 0.0 };
    for (i, a) in states.iter().enumerate() {
        for b in &states[i..] {
            let ip = dense::inner(&a.vector, &b.vector);
            if a.label == b.label {
                let expected = if a.line_index == b.line_index { 1.0 } else { 0.0 };
                let dev = (ip - dense::ONE.scale(expected)).norm();
                report.max_gram_deviation = report.max_gram_deviation.max(dev);
            } else {
                let dev = (ip.norm_sqr() - target).abs();
                report.max_cross_deviation = report.max_cross_deviation.max(dev);
            }
        }
    }
    report
}
