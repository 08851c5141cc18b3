//! Points, lines and striations of the N x N grid over GF(2^n), and the
//! symplectic (wedge) product on binary coordinates.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::galois::{FieldElement, FieldSpec};
use crate::gf2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasePoint {
    pub q: FieldElement,
    pub p: FieldElement,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { q: FieldElement::ZERO, p: FieldElement::ZERO };

    pub fn new(q: FieldElement, p: FieldElement) -> Self {
        PhasePoint { q, p }
    }

    pub fn is_origin(&self) -> bool {
        self.q.is_zero() && self.p.is_zero()
    }

    /// Binary coordinates: `q` in the canonical basis, `p` in the momentum basis.
    pub fn to_binary(&self, spec: &FieldSpec) -> BinaryPoint {
        BinaryPoint { qbits: self.q.bits(), pbits: spec.momentum_bits(self.p) }
    }

    /// Row-major index `index_of(q) * N + index_of(p)` in axis order.
    pub fn grid_index(&self, spec: &FieldSpec) -> usize {
        spec.index_of(self.q) * spec.size() + spec.index_of(self.p)
    }

    pub fn from_grid_index(spec: &FieldSpec, index: usize) -> Self {
        let n = spec.size();
        PhasePoint { q: spec.element_at(index / n), p: spec.element_at(index % n) }
    }

    pub fn label(&self, spec: &FieldSpec) -> String {
        format!("({}, {})", spec.label(self.q), spec.label(self.p))
    }
}

impl std::ops::Add for PhasePoint {
    type Output = PhasePoint;
    fn add(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint { q: self.q + rhs.q, p: self.p + rhs.p }
    }
}

/// All points, `q` major, both axes in power order.
pub fn all_points(spec: &FieldSpec) -> impl Iterator<Item = PhasePoint> + '_ {
    (0..spec.size() * spec.size()).map(move |i| PhasePoint::from_grid_index(spec, i))
}

/// A phase-space point as a pair of n-bit strings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPoint {
    pub qbits: u32,
    pub pbits: u32,
}

impl BinaryPoint {
    pub fn new(qbits: u32, pbits: u32) -> Self {
        BinaryPoint { qbits, pbits }
    }

    pub fn is_zero(&self) -> bool {
        self.qbits == 0 && self.pbits == 0
    }

    pub fn to_point(&self, spec: &FieldSpec) -> PhasePoint {
        PhasePoint {
            q: FieldElement::from_bits(self.qbits),
            p: spec.momentum_from_bits(self.pbits),
        }
    }
}

impl std::ops::Add for BinaryPoint {
    type Output = BinaryPoint;
    fn add(self, rhs: BinaryPoint) -> BinaryPoint {
        BinaryPoint { qbits: self.qbits ^ rhs.qbits, pbits: self.pbits ^ rhs.pbits }
    }
}

/// `q_a . p_b + q_b . p_a` over GF(2).
pub fn wedge(alpha: BinaryPoint, beta: BinaryPoint) -> u32 {
    gf2::dot(alpha.qbits, beta.pbits) ^ gf2::dot(beta.qbits, alpha.pbits)
}

/// Basis-free form of [`wedge`]: `tr(s (q_a p_b + q_b p_a))` where `s` is the
/// momentum scale of the field.
pub fn wedge_field(spec: &FieldSpec, alpha: PhasePoint, beta: PhasePoint) -> u32 {
    let s = spec.momentum_scale();
    let form = spec.mul(alpha.q, beta.p) + spec.mul(beta.q, alpha.p);
    spec.trace(spec.mul(s, form))
}

/// Which parallel family a line belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StriationLabel {
    /// Horizontal lines `p = c`; the ray is the q axis.
    H,
    /// Vertical lines `q = c`; the ray is the p axis.
    V,
    /// Lines parallel to the ray `p = w^k q`.
    Slope(usize),
}

impl StriationLabel {
    /// `0` for h, `1` for v, `2 + k` for slope `k`.
    pub fn index(&self) -> usize {
        match *self {
            StriationLabel::H => 0,
            StriationLabel::V => 1,
            StriationLabel::Slope(k) => 2 + k,
        }
    }

    pub fn from_index(index: usize) -> Self {
        match index {
            0 => StriationLabel::H,
            1 => StriationLabel::V,
            k => StriationLabel::Slope(k - 2),
        }
    }

    /// All `N + 1` labels in index order.
    pub fn all(spec: &FieldSpec) -> Vec<StriationLabel> {
        (0..spec.size() + 1).map(Self::from_index).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, StriationLabel::Slope(_))
    }
}

impl fmt::Display for StriationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StriationLabel::H => write!(f, "h"),
            StriationLabel::V => write!(f, "v"),
            StriationLabel::Slope(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for StriationLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "h" | "H" => Ok(StriationLabel::H),
            "v" | "V" => Ok(StriationLabel::V),
            other => other
                .parse::<usize>()
                .map(StriationLabel::Slope)
                .map_err(|_| Error::Format(format!("unknown striation label {s:?}"))),
        }
    }
}

/// The line `a q + b p = c`, normalized so the first nonzero of `(a, b)` is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
}

impl Line {
    pub fn new(spec: &FieldSpec, a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        for x in [a, b, c] {
            spec.element(x.bits())?;
        }
        let lead = if !a.is_zero() {
            a
        } else if !b.is_zero() {
            b
        } else {
            return Err(Error::DegenerateLine);
        };
        let inv = spec.inv(lead).expect("nonzero");
        Ok(Line { a: spec.mul(a, inv), b: spec.mul(b, inv), c: spec.mul(c, inv) })
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn c(&self) -> FieldElement {
        self.c
    }

    /// The ray of a striation.
    pub fn ray(spec: &FieldSpec, label: StriationLabel) -> Line {
        Self::in_striation(spec, label, FieldElement::ZERO)
    }

    /// Member of a striation with offset `c`.
    pub fn in_striation(spec: &FieldSpec, label: StriationLabel, c: FieldElement) -> Line {
        let (a, b) = direction(spec, label);
        Line { a, b, c }
    }

    /// The line of the given striation passing through `pt`.
    pub fn through(spec: &FieldSpec, label: StriationLabel, pt: PhasePoint) -> Line {
        let (a, b) = direction(spec, label);
        Line { a, b, c: spec.mul(a, pt.q) + spec.mul(b, pt.p) }
    }

    pub fn is_ray(&self) -> bool {
        self.c.is_zero()
    }

    pub fn contains(&self, spec: &FieldSpec, pt: PhasePoint) -> bool {
        spec.mul(self.a, pt.q) + spec.mul(self.b, pt.p) == self.c
    }

    pub fn label(&self, spec: &FieldSpec) -> StriationLabel {
        if self.a.is_zero() {
            StriationLabel::H
        } else if self.b.is_zero() {
            StriationLabel::V
        } else {
            let order = spec.group_order();
            let lb = spec.log(self.b).expect("nonzero");
            StriationLabel::Slope((order - lb) % order)
        }
    }

    /// Position of the line inside its striation (the ray is 0).
    pub fn index_in_striation(&self, spec: &FieldSpec) -> usize {
        spec.index_of(self.c)
    }

    /// The N points of the line, parametrized along the free coordinate in
    /// power order.
    pub fn points(&self, spec: &FieldSpec) -> Vec<PhasePoint> {
        spec.elements()
            .map(|t| {
                if self.b.is_zero() {
                    // q = c (a = 1)
                    PhasePoint::new(self.c, t)
                } else {
                    // p = (c - a q) / b
                    let p = spec.div(self.c + spec.mul(self.a, t), self.b).expect("b nonzero");
                    PhasePoint::new(t, p)
                }
            })
            .collect()
    }

    /// The displacement taking the ray of this striation onto this line:
    /// `(0, c/b)` when `b != 0`, otherwise `(c/a, 0)`.
    pub fn displacement(&self, spec: &FieldSpec) -> PhasePoint {
        if !self.b.is_zero() {
            PhasePoint::new(FieldElement::ZERO, spec.div(self.c, self.b).expect("b nonzero"))
        } else {
            PhasePoint::new(spec.div(self.c, self.a).expect("a nonzero"), FieldElement::ZERO)
        }
    }

    pub fn describe(&self, spec: &FieldSpec) -> String {
        match self.label(spec) {
            StriationLabel::H => format!("p = {}", spec.label(self.c)),
            StriationLabel::V => format!("q = {}", spec.label(self.c)),
            StriationLabel::Slope(k) => {
                let slope = spec.omega_pow(k as i64);
                let shift = spec.div(self.c, self.b).expect("b nonzero");
                if shift.is_zero() {
                    format!("p = {} q", spec.label(slope))
                } else {
                    format!("p = {} q + {}", spec.label(slope), spec.label(shift))
                }
            }
        }
    }
}

fn direction(spec: &FieldSpec, label: StriationLabel) -> (FieldElement, FieldElement) {
    match label {
        StriationLabel::H => (FieldElement::ZERO, FieldElement::ONE),
        StriationLabel::V => (FieldElement::ONE, FieldElement::ZERO),
        // p = w^k q  <=>  q + w^-k p = 0
        StriationLabel::Slope(k) => (FieldElement::ONE, spec.omega_pow(-(k as i64))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Striation {
    pub label: StriationLabel,
    /// Ordered by offset in power order; the ray first.
    pub lines: Vec<Line>,
}

impl Striation {
    pub fn new(spec: &FieldSpec, label: StriationLabel) -> Self {
        let lines = spec.elements().map(|c| Line::in_striation(spec, label, c)).collect();
        Striation { label, lines }
    }

    pub fn ray(&self) -> &Line {
        &self.lines[0]
    }

    /// For every point (grid index order), the index of the line holding it.
    pub fn line_map(&self, spec: &FieldSpec) -> Vec<usize> {
        all_points(spec)
            .map(|pt| Line::through(spec, self.label, pt).index_in_striation(spec))
            .collect()
    }
}

pub fn all_striations(spec: &FieldSpec) -> Vec<Striation> {
    StriationLabel::all(spec).into_iter().map(|l| Striation::new(spec, l)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    Point(PhasePoint),
    Parallel,
    Same,
}

pub fn intersect(spec: &FieldSpec, l1: &Line, l2: &Line) -> Intersection {
    let det = spec.mul(l1.a, l2.b) + spec.mul(l2.a, l1.b);
    if det.is_zero() {
        // normalized, so equal direction means equal (a, b)
        return if l1.c == l2.c { Intersection::Same } else { Intersection::Parallel };
    }
    let q = spec.div(spec.mul(l1.c, l2.b) + spec.mul(l2.c, l1.b), det).expect("det nonzero");
    let p = spec.div(spec.mul(l1.a, l2.c) + spec.mul(l2.a, l1.c), det).expect("det nonzero");
    Intersection::Point(PhasePoint::new(q, p))
}

pub fn translate_line(spec: &FieldSpec, line: &Line, d: PhasePoint) -> Line {
    Line { a: line.a, b: line.b, c: line.c + spec.mul(line.a, d.q) + spec.mul(line.b, d.p) }
}
