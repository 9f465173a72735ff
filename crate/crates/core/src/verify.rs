//! Table 1 multiplicity/tangency patterns of branch sextics and the
//! end-to-end checks of the nine quartic cases.

use std::fmt;

use serde::Deserialize;

use crate::doublecover::{
    assemble_quartic, branch_sextic, gauge_equivalent, quartic_ring, BranchCurve, QuarticSurface,
};
use crate::error::{Error, Result};
use crate::field::{parse_minpoly, FieldContext, FieldElement};
use crate::gb::roots::roots;
use crate::gb::solve_zero_dim;
use crate::gb::upoly::UPoly;
use crate::linsys::{
    affine_ring, blow_up_poly, canonical_basis, full_system, lin_sys, multiplicity_at, next_center,
    normalize_tangent, Point, PointChain,
};
use crate::matrix;
use crate::mpoly::{parse_poly, MPoly, Ring};
use crate::parsch::Scheme;
use crate::problem::{parse_point, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub family: Family,
    pub index: u32,
}

impl Label {
    pub fn new(family: Family, index: u32) -> Result<Label> {
        let ok = match family {
            Family::A => index >= 1,
            Family::D => index >= 4,
            Family::E => (6..=8).contains(&index),
        };
        if !ok {
            return Err(Error::Invalid(format!("no singularity {family:?}{index}")));
        }
        Ok(Label { family, index })
    }

    pub fn milnor(&self) -> u32 {
        self.index
    }

    /// The next member of the same series.
    pub fn next(&self) -> Option<Label> {
        Label::new(self.family, self.index + 1).ok()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

/// Splits a configuration name such as `E6D13` into its labels.
pub fn parse_labels(name: &str) -> Result<Vec<Label>> {
    let mut out = Vec::new();
    let mut chars = name.chars().peekable();
    while let Some(c) = chars.next() {
        let family = match c {
            'A' => Family::A,
            'D' => Family::D,
            'E' => Family::E,
            _ => return Err(Error::Parse(format!("unexpected `{c}` in `{name}`"))),
        };
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let index = digits
            .parse()
            .map_err(|_| Error::Parse(format!("missing index in `{name}`")))?;
        out.push(Label::new(family, index)?);
    }
    if out.is_empty() {
        return Err(Error::Parse("empty configuration".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ADEPattern {
    pub label: Label,
    pub at_projection: bool,
    pub mults: Vec<u32>,
    /// Alternative tangent templates, each with one slot per blow-up;
    /// `None` leaves the direction free.
    pub tangents: Vec<Vec<Option<Point>>>,
    /// Order of contact with the line `{a2 = 0}` at the point.
    pub contact: Option<u32>,
    /// Tjurina number of the curve singularity of the branch sextic.
    pub tjurina: u32,
}

fn vertical() -> Option<Point> {
    Some((FieldElement::zero(), FieldElement::one()))
}

fn horizontal() -> Option<Point> {
    Some((FieldElement::one(), FieldElement::zero()))
}

fn ends_tangent(len: usize) -> Vec<Option<Point>> {
    let mut t = vec![None; len - 1];
    *t.last_mut().unwrap() = vertical();
    t
}

fn twos(k: u32) -> Vec<u32> {
    vec![2; k as usize]
}

/// The row of Table 1 for `label`, column `q = p` when `at_projection`.
pub fn pattern(label: Label, at_projection: bool) -> Option<ADEPattern> {
    let n = label.index;
    let (mults, tangents, contact) = match (label.family, at_projection) {
        (Family::A, false) if n == 2 => (vec![2, 1, 1], vec![vec![None, vertical()]], None),
        (Family::A, false) if n % 2 == 1 => {
            let m = twos((n + 1) / 2);
            let t = vec![None; m.len() - 1];
            (m, vec![t], None)
        }
        (Family::A, false) => {
            let m = [twos(n / 2), vec![1, 1]].concat();
            let t = ends_tangent(m.len());
            (m, vec![t], None)
        }
        (Family::A, true) if n % 2 == 1 && n >= 3 => {
            let m = twos((n - 1) / 2);
            let t = vec![None; m.len() - 1];
            (m, vec![t], None)
        }
        (Family::A, true) if n % 2 == 0 && n >= 4 => {
            let m = [twos(n / 2 - 1), vec![1, 1]].concat();
            let t = ends_tangent(m.len());
            (m, vec![t], None)
        }
        (Family::A, true) => return None,
        (Family::D, false) if n == 5 => (vec![3, 1, 1], vec![vec![None, vertical()]], None),
        (Family::D, true) if n == 5 => (vec![2, 2], vec![vec![None]], None),
        (Family::D, false) if n % 2 == 0 => {
            let m = [vec![3], twos((n - 4) / 2)].concat();
            let t = vec![None; m.len() - 1];
            (m, vec![t], None)
        }
        (Family::D, true) if n % 2 == 0 && n >= 6 => {
            let m = [vec![3], twos((n - 6) / 2)].concat();
            let t = vec![None; m.len() - 1];
            (m, vec![t], None)
        }
        (Family::D, false) => {
            let m = [vec![3], twos((n - 5) / 2), vec![1, 1]].concat();
            let t = ends_tangent(m.len());
            (m, vec![t], None)
        }
        (Family::D, true) if n % 2 == 1 => {
            let m = [vec![3], twos((n - 7) / 2), vec![1, 1]].concat();
            let t = ends_tangent(m.len());
            (m, vec![t], None)
        }
        (Family::D, true) => return None,
        (Family::E, false) => match n {
            6 => (
                vec![3, 1, 1, 1],
                vec![vec![None, vertical(), vertical()]],
                None,
            ),
            7 => (vec![3, 2, 1], vec![vec![None, vertical()]], None),
            _ => (
                vec![3, 2, 1, 1],
                vec![vec![None, vertical(), horizontal()]],
                None,
            ),
        },
        (Family::E, true) => match n {
            6 => (vec![2, 2, 2], vec![vec![None, None]], Some(6)),
            7 => (vec![3, 2, 1], vec![vec![None, None]], Some(6)),
            _ => (
                vec![3, 2, 1],
                vec![vec![None, vertical()], vec![None, horizontal()]],
                Some(6),
            ),
        },
    };
    let tjurina = match (label.family, at_projection) {
        (_, false) => n,
        (Family::E, true) => n - 1,
        (_, true) => n - 2,
    };
    Some(ADEPattern {
        label,
        at_projection,
        mults,
        tangents,
        contact,
        tjurina,
    })
}

/// The pattern of the next singularity in the same series and column.
pub fn next_degenerate(p: &ADEPattern) -> Option<ADEPattern> {
    pattern(p.label.next()?, p.at_projection)
}

/// Outcome of matching one pattern at one point.
#[derive(Clone, Debug)]
pub struct PatternMatch {
    pub matched: bool,
    /// Directions used at each blow-up, in chart coordinates.
    pub tangents: Vec<Point>,
    /// Field holding the point and the directions.
    pub context: FieldContext,
    /// Whether the match was found with `x` and `y` exchanged.
    pub transposed: bool,
    /// Why the last attempted branch failed.
    pub reason: Option<String>,
}

/// Directions of the tangent cone of `f` at `p` (multiplicity `m`), each
/// with the ring it is defined over.
fn tangent_directions(f: &MPoly, p: &Point, m: u32, notes: &mut Vec<String>) -> Vec<(Point, Ring)> {
    let ring = f.ring();
    let shifted = f.shift(&[(0, p.0.clone()), (1, p.1.clone())]);
    let cone: Vec<_> = shifted
        .terms()
        .iter()
        .filter(|(e, _)| e[0] + e[1] == m)
        .collect();
    let mut out = Vec::new();
    if cone.iter().all(|(e, _)| e[0] > 0) {
        out.push(((FieldElement::zero(), FieldElement::one()), ring.clone()));
    }
    let mut c = vec![FieldElement::zero(); m as usize + 1];
    for (e, v) in &cone {
        c[e[1] as usize] = v.clone();
    }
    let found = roots(&UPoly::new(c).squarefree(), ring.ctx());
    for (t, ctx) in found.found {
        let r = if ctx == *ring.ctx() {
            ring.clone()
        } else {
            ring.with_ctx(ctx)
        };
        out.push(((FieldElement::one(), t), r));
    }
    for res in found.residual {
        notes.push(format!(
            "tangent directions need the splitting field of {res}"
        ));
    }
    out
}

fn walk(
    f: &MPoly,
    p: &Point,
    mults: &[u32],
    slots: &[Option<Point>],
    path: Vec<Point>,
    notes: &mut Vec<String>,
) -> Result<Option<PatternMatch>> {
    let level = path.len();
    let m = multiplicity_at(f, p);
    if m != mults[level] {
        notes.push(format!(
            "multiplicity {m} at level {level}, expected {}",
            mults[level]
        ));
        return Ok(None);
    }
    if level + 1 == mults.len() {
        return Ok(Some(PatternMatch {
            matched: true,
            tangents: path,
            context: f.ring().ctx().clone(),
            transposed: false,
            reason: None,
        }));
    }
    let candidates = match &slots[level] {
        Some(t) => vec![(normalize_tangent(t)?, f.ring().clone())],
        None => {
            let mut c = tangent_directions(f, p, m, notes);
            if level == 0 {
                // a vertical first direction is read in the exchanged coordinates
                c.retain(|(t, _)| !t.0.is_zero());
            }
            c
        }
    };
    for (t, ring) in candidates {
        let g = if ring.ctx() == f.ring().ctx() {
            f.clone()
        } else {
            f.reinterpret(&ring)
        };
        let (next, swap) = next_center(p, &t);
        let g = blow_up_poly(&g, p, m, swap)?;
        let mut path = path.clone();
        path.push(t);
        if let Some(found) = walk(&g, &next, mults, slots, path, notes)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn same_direction(a: &Point, b: &Point) -> bool {
    match (normalize_tangent(a), normalize_tangent(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

/// Order of contact of `f` with the line `line = 0` (affine variable
/// index) at `p`.
pub fn line_contact(f: &MPoly, p: &Point, line: usize) -> u32 {
    let (on, along) = if line == 1 {
        (&p.1, &p.0)
    } else {
        (&p.0, &p.1)
    };
    if !on.is_zero() {
        return 0;
    }
    let g = f.eval_var(line, &FieldElement::zero());
    if g.is_zero() {
        return u32::MAX;
    }
    g.linear_factor_multiplicity(1 - line, along)
}

/// `f(y, x)`.
pub fn transpose(f: &MPoly) -> MPoly {
    f.map_vars(f.ring(), &[1, 0])
}

/// Checks the multiplicity sequence of `pattern` at `base` along its
/// tangent templates, with `known` directions filling free slots. Free
/// slots without a known direction are searched over the tangent cone.
/// Templates are read in the chart coordinates of a first blow-up along a
/// non-vertical direction; when the first direction is free and nothing is
/// recorded, the curve is also tried with `x` and `y` exchanged.
pub fn verify_pattern(
    f: &MPoly,
    pattern: &ADEPattern,
    base: &Point,
    known: &[Option<Point>],
    line: usize,
) -> Result<PatternMatch> {
    if f.ring().nvars() != 2 {
        return Err(Error::Invalid(
            "pattern check needs an affine plane curve".into(),
        ));
    }
    let mut notes = Vec::new();
    if multiplicity_at(f, base) == 0 {
        return Err(Error::Invalid("point is not on the curve".into()));
    }
    if let Some(c) = pattern.contact {
        let got = line_contact(f, base, line);
        if got != c {
            return Ok(PatternMatch {
                matched: false,
                tangents: Vec::new(),
                context: f.ring().ctx().clone(),
                transposed: false,
                reason: Some(format!("contact {got} with the line, expected {c}")),
            });
        }
    }
    for template in &pattern.tangents {
        let mut slots = template.clone();
        let mut conflict = false;
        for (j, k) in known.iter().enumerate().take(slots.len()) {
            match (&slots[j], k) {
                (Some(t), Some(k)) if !same_direction(t, k) => conflict = true,
                (None, Some(k)) => slots[j] = Some(k.clone()),
                _ => {}
            }
        }
        if conflict {
            notes.push("recorded tangent contradicts the pattern".into());
            continue;
        }
        if let Some(found) = walk(f, base, &pattern.mults, &slots, Vec::new(), &mut notes)? {
            return Ok(found);
        }
        if known.iter().all(Option::is_none) && !slots.is_empty() && slots[0].is_none() {
            let g = transpose(f);
            let p = (base.1.clone(), base.0.clone());
            if let Some(mut found) = walk(&g, &p, &pattern.mults, &slots, Vec::new(), &mut notes)? {
                found.transposed = true;
                return Ok(found);
            }
        }
    }
    Ok(PatternMatch {
        matched: false,
        tangents: Vec::new(),
        context: f.ring().ctx().clone(),
        transposed: false,
        reason: notes.pop(),
    })
}

/// Local Tjurina number of `f` at `p`, capped: returns the length of
/// `O_p / (f, f_x, f_y, m_p^(cap+1))`, which equals the Tjurina number
/// whenever that is at most `cap`. Computed as the corank of the truncated
/// monomial multiples of the three generators.
pub fn local_tjurina(f: &MPoly, p: &Point, cap: u32) -> u32 {
    let g = f.shift(&[(0, p.0.clone()), (1, p.1.clone())]);
    let n = cap + 1;
    let gens = [g.clone(), g.derivative(0, 1), g.derivative(1, 1)];
    let mut monos = Vec::new();
    for total in 0..n {
        for i in 0..=total {
            monos.push([i, total - i]);
        }
    }
    let col = |e: &[u32]| {
        let d = e[0] + e[1];
        (d * (d + 1) / 2 + e[0]) as usize
    };
    let mut rows = Vec::new();
    for h in &gens {
        let low = match h.low_degree() {
            Some(l) if l < n => l,
            _ => continue,
        };
        for m in monos.iter().filter(|m| m[0] + m[1] + low < n) {
            let row: Vec<(usize, FieldElement)> = h
                .terms()
                .iter()
                .filter(|(e, _)| e[0] + e[1] + m[0] + m[1] < n)
                .map(|(e, c)| (col(&[e[0] + m[0], e[1] + m[1]]), c.clone()))
                .collect();
            rows.push(row);
        }
    }
    (monos.len() - matrix::sparse_rank(rows)) as u32
}

/// A singular point of an affine curve with its field of definition.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub point: Point,
    pub context: FieldContext,
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.point.0, self.point.1)
    }
}

/// Singular points of an affine curve and any unsplit residual factors.
pub fn singular_points(f: &MPoly, max_steps: usize) -> Result<(Vec<SingularPoint>, Vec<String>)> {
    let s = Scheme::new(
        f.ring(),
        vec![f.clone(), f.derivative(0, 1), f.derivative(1, 1)],
    );
    let mut pts = Vec::new();
    let mut residual = Vec::new();
    for p in solve_zero_dim(&s, max_steps)? {
        match (p.values(), &p.residual_minpoly) {
            (Some(v), None) => pts.push(SingularPoint {
                point: (v[0].clone(), v[1].clone()),
                context: p.context,
            }),
            (_, r) => residual.push(r.as_ref().map(|r| r.to_string()).unwrap_or_default()),
        }
    }
    Ok((pts, residual))
}

/// Singular points on the line `z = 0` of a plane curve in `x, y, z`,
/// described in projective coordinates.
pub fn singular_points_at_infinity(f: &MPoly, max_steps: usize) -> Result<Vec<String>> {
    let ctx = f.ring().ctx().clone();
    let a = affine_ring(ctx);
    let mut out = Vec::new();
    let g = f.eval_var(0, &FieldElement::one()).map_vars(&a, &[0, 0, 1]);
    let s = Scheme::new(
        &a,
        vec![
            g.clone(),
            g.derivative(0, 1),
            g.derivative(1, 1),
            MPoly::var(&a, 1),
        ],
    );
    let (pts, residual) = singular_points_scheme(&s, max_steps)?;
    for p in pts {
        out.push(format!("(1 : {} : 0)", p.point.0));
    }
    out.extend(
        residual
            .into_iter()
            .map(|r| format!("(1 : root of {r} : 0)")),
    );
    let h = f.eval_var(1, &FieldElement::one()).map_vars(&a, &[0, 0, 1]);
    if multiplicity_at(&h, &(FieldElement::zero(), FieldElement::zero())) >= 2 {
        out.push("(0 : 1 : 0)".into());
    }
    Ok(out)
}

fn singular_points_scheme(
    s: &Scheme,
    max_steps: usize,
) -> Result<(Vec<SingularPoint>, Vec<String>)> {
    let mut pts = Vec::new();
    let mut residual = Vec::new();
    for p in solve_zero_dim(s, max_steps)? {
        match (p.values(), p.residual_minpoly) {
            (Some(v), None) => pts.push(SingularPoint {
                point: (v[0].clone(), v[1].clone()),
                context: p.context,
            }),
            (_, r) => residual.push(r.map(|r| r.to_string()).unwrap_or_default()),
        }
    }
    Ok((pts, residual))
}

/// The affine part `z = 1` of a plane sextic, in [`affine_ring`].
pub fn affine_part(sextic: &MPoly) -> MPoly {
    let a = affine_ring(sextic.ring().ctx().clone());
    sextic
        .eval_var(2, &FieldElement::one())
        .map_vars(&a, &[0, 1, 0])
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    name: String,
    field: Option<String>,
    line: String,
    construction: Option<ConstructionFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstructionFile {
    points: Vec<Vec<Scalar>>,
    mults: Vec<Vec<u32>>,
    tangents: Vec<Vec<Vec<Scalar>>>,
    labels: Vec<usize>,
}

/// Point data a sextic was built from.
#[derive(Clone, Debug)]
pub struct Construction {
    pub points: Vec<Point>,
    pub mults: Vec<Vec<u32>>,
    pub tangents: Vec<Vec<Option<Point>>>,
    /// Chain carrying each label, in label order.
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub name: String,
    /// The first label sits at the projection point.
    pub labels: Vec<Label>,
    pub quartic: QuarticSurface,
    /// Index of the double-line coordinate in `x, y` (`x, y, z`).
    pub line: usize,
    pub construction: Option<Construction>,
}

pub const CASE_NAMES: [&str; 9] = [
    "D5E7E7", "E6D13", "D7D6D6", "E6D8D5", "E6E6D7", "E6E8D5", "E7D6D6", "E7D12", "E7E6D6",
];

fn case_sources(name: &str) -> Option<(&'static str, &'static str)> {
    macro_rules! case {
        ($n:literal) => {
            (
                include_str!(concat!("../data/cases/", $n, ".json")),
                include_str!(concat!("../data/golden/", $n, ".txt")),
            )
        };
    }
    Some(match name {
        "D5E7E7" => case!("D5E7E7"),
        "E6D13" => case!("E6D13"),
        "D7D6D6" => case!("D7D6D6"),
        "E6D8D5" => case!("E6D8D5"),
        "E6E6D7" => case!("E6E6D7"),
        "E6E8D5" => case!("E6E8D5"),
        "E7D6D6" => case!("E7D6D6"),
        "E7D12" => case!("E7D12"),
        "E7E6D6" => case!("E7E6D6"),
        _ => return None,
    })
}

/// Printed quartic equation of a case.
pub fn golden_quartic(name: &str) -> Result<&'static str> {
    case_sources(name)
        .map(|s| s.1)
        .ok_or_else(|| Error::Invalid(format!("unknown case `{name}`")))
}

pub fn load_case(name: &str) -> Result<CaseSpec> {
    let (manifest, golden) =
        case_sources(name).ok_or_else(|| Error::Invalid(format!("unknown case `{name}`")))?;
    let m: Manifest =
        serde_json::from_str(manifest).map_err(|e| Error::Parse(format!("{name}.json: {e}")))?;
    let ctx = match &m.field {
        Some(t) => parse_minpoly(t)?,
        None => FieldContext::Rationals,
    };
    let eq = parse_poly(&quartic_ring(ctx.clone()), golden)?;
    let quartic = QuarticSurface::from_equation(&eq)?;
    let line = match m.line.as_str() {
        "x" => 0,
        "y" => 1,
        other => {
            return Err(Error::Invalid(format!(
                "{name}.json: line must be x or y, got {other}"
            )))
        }
    };
    let construction = match m.construction {
        None => None,
        Some(c) => {
            let points = c
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| parse_point(p, &ctx, &format!("points[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let mut tangents = Vec::new();
            for (i, chain) in c.tangents.iter().enumerate() {
                let mut slots = Vec::new();
                for (j, t) in chain.iter().enumerate() {
                    slots.push(if t.is_empty() {
                        None
                    } else {
                        Some(parse_point(t, &ctx, &format!("tangents[{i}][{j}]"))?)
                    });
                }
                tangents.push(slots);
            }
            Some(Construction {
                points,
                mults: c.mults,
                tangents,
                labels: c.labels,
            })
        }
    };
    Ok(CaseSpec {
        name: m.name,
        labels: parse_labels(name)?,
        quartic,
        line,
        construction,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.name,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Full result of checking one label at one point.
#[derive(Clone, Debug)]
pub struct LabelCheck {
    pub pattern: ADEPattern,
    pub found: PatternMatch,
    /// The next-degenerate pattern, if any, and whether its multiplicity
    /// profile also holds at the point.
    pub next: Option<(ADEPattern, bool)>,
    /// Capped one above the expected value.
    pub tjurina: u32,
    pub membership: bool,
}

impl LabelCheck {
    /// The next-degenerate singularity is excluded: its profile fails, or
    /// the Tjurina number is not its value.
    pub fn next_rejected(&self) -> bool {
        match &self.next {
            None => true,
            Some((n, profile)) => !profile || self.tjurina != n.tjurina,
        }
    }

    pub fn exact(&self) -> bool {
        self.found.matched
            && self.next_rejected()
            && self.tjurina == self.pattern.tjurina
            && self.membership
    }

    fn describe(&self) -> String {
        if !self.found.matched {
            return self
                .found
                .reason
                .clone()
                .unwrap_or_else(|| "pattern not matched".into());
        }
        let t: Vec<String> = self
            .found
            .tangents
            .iter()
            .map(|(a, b)| format!("[{a},{b}]"))
            .collect();
        format!(
            "m={:?} t=[{}], next type {}, tjurina {} (expected {}), sextic in its linear system: {}",
            self.pattern.mults,
            t.join(","),
            match &self.next {
                None => "none",
                Some((_, false)) => "rejected by profile",
                Some(_) if self.next_rejected() => "rejected by tjurina number",
                Some(_) => "also matches",
            },
            self.tjurina,
            self.pattern.tjurina,
            self.membership
        )
    }
}

fn in_span(sections: &[MPoly], f: &MPoly) -> bool {
    if sections.is_empty() {
        return false;
    }
    let mut all = sections.to_vec();
    all.push(f.clone());
    canonical_basis(&all).len() == canonical_basis(sections).len()
}

/// Checks `label` at `point`, including exactness and the membership of
/// `f` in the degree-6 system cut out by the realized chain.
pub fn check_label(
    f: &MPoly,
    label: Label,
    at_projection: bool,
    point: &SingularPoint,
    known: &[Option<Point>],
    line: usize,
) -> Result<Option<LabelCheck>> {
    let Some(pat) = pattern(label, at_projection) else {
        return Ok(None);
    };
    let ring = affine_ring(point.context.clone());
    let f = f.reinterpret(&ring);
    let found = verify_pattern(&f, &pat, &point.point, known, line)?;
    if !found.matched {
        return Ok(Some(LabelCheck {
            pattern: pat,
            found,
            next: None,
            tjurina: 0,
            membership: false,
        }));
    }
    let next = match next_degenerate(&pat) {
        Some(n) => {
            let m = verify_pattern(&f, &n, &point.point, &[], line)?.matched;
            Some((n, m))
        }
        None => None,
    };
    let tjurina = local_tjurina(&f, &point.point, pat.tjurina + 1);
    let mut fr = f.reinterpret(&affine_ring(found.context.clone()));
    let mut base = point.point.clone();
    if found.transposed {
        fr = transpose(&fr);
        base = (base.1, base.0);
    }
    let chain = PointChain::new(base, pat.mults.clone(), found.tangents.clone());
    let sys = lin_sys(&full_system(fr.ring(), 6), &[chain])?;
    let membership = in_span(&sys.sections, &fr);
    Ok(Some(LabelCheck {
        pattern: pat,
        found,
        next,
        tjurina,
        membership,
    }))
}

/// Assigns labels to distinct points, trying points in order and
/// backtracking on failure.
fn assign(
    checks: &[Vec<Option<bool>>],
    label: usize,
    used: &mut Vec<bool>,
    out: &mut Vec<usize>,
) -> bool {
    if label == checks.len() {
        return true;
    }
    for (i, ok) in checks[label].iter().enumerate() {
        if used[i] || *ok != Some(true) {
            continue;
        }
        used[i] = true;
        out.push(i);
        if assign(checks, label + 1, used, out) {
            return true;
        }
        out.pop();
        used[i] = false;
    }
    false
}

fn point_eq(a: &Point, b: &Point) -> bool {
    a.0 == b.0 && a.1 == b.1
}

pub fn verify_case(case: &CaseSpec, max_steps: usize) -> CaseReport {
    let mut report = CaseReport {
        name: case.name.clone(),
        checks: Vec::new(),
    };
    let b = branch_sextic(&case.quartic);
    report.push(
        "squarefree",
        b.sextic.is_squarefree(),
        format!("sextic of {} terms", b.sextic.len()),
    );
    round_trip_check(&mut report, &b, case);
    let milnor: u32 = case.labels.iter().map(Label::milnor).sum();
    report.push("milnor sum", milnor == 19, format!("{milnor}"));

    let f = affine_part(&b.sextic);
    let (points, residual) = match singular_points(&f, max_steps) {
        Ok(x) => x,
        Err(e) => {
            report.push("singular points", false, e.to_string());
            return report;
        }
    };
    let listed: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    report.push(
        "singular points",
        residual.is_empty(),
        if residual.is_empty() {
            listed.join(" ")
        } else {
            format!("{}; unsplit: {}", listed.join(" "), residual.join(", "))
        },
    );
    match singular_points_at_infinity(&b.sextic, max_steps) {
        Ok(inf) => report.push(
            "points at infinity",
            inf.is_empty(),
            if inf.is_empty() {
                "none singular".into()
            } else {
                inf.join(" ")
            },
        ),
        Err(e) => report.push("points at infinity", false, e.to_string()),
    }

    // candidate points per label with recorded tangents
    let mut known: Vec<Vec<Vec<Option<Point>>>> =
        vec![vec![Vec::new(); points.len()]; case.labels.len()];
    let mut allowed: Vec<Vec<bool>> = vec![vec![true; points.len()]; case.labels.len()];
    if let Some(c) = &case.construction {
        for (k, &chain) in c.labels.iter().enumerate().take(case.labels.len()) {
            for (i, p) in points.iter().enumerate() {
                allowed[k][i] = point_eq(&p.point, &c.points[chain]);
                if allowed[k][i] {
                    known[k][i] = c.tangents[chain].clone();
                }
            }
        }
    }
    let mut results: Vec<Vec<Option<LabelCheck>>> =
        vec![vec![None; points.len()]; case.labels.len()];
    let mut ok: Vec<Vec<Option<bool>>> = vec![vec![None; points.len()]; case.labels.len()];
    for (k, &label) in case.labels.iter().enumerate() {
        for (i, p) in points.iter().enumerate() {
            if !allowed[k][i] {
                continue;
            }
            match check_label(&f, label, k == 0, p, &known[k][i], case.line) {
                Ok(Some(c)) => {
                    ok[k][i] = Some(c.exact());
                    results[k][i] = Some(c);
                }
                Ok(None) => {
                    report.push(format!("{label}"), false, "no pattern in this column");
                }
                Err(e) => report.push(format!("{label} at {p}"), false, e.to_string()),
            }
        }
    }
    let mut used = vec![false; points.len()];
    let mut chosen = Vec::new();
    let assigned = assign(&ok, 0, &mut used, &mut chosen);
    if assigned {
        for (k, &i) in chosen.iter().enumerate() {
            let c = results[k][i].as_ref().unwrap();
            let col = if k == 0 { "q=p" } else { "q!=p" };
            report.push(
                format!("{} ({col}) at {}", case.labels[k], points[i]),
                true,
                c.describe(),
            );
        }
    } else {
        for (k, label) in case.labels.iter().enumerate() {
            let tried: Vec<String> = results[k]
                .iter()
                .zip(&points)
                .filter_map(|(r, p)| r.as_ref().map(|r| format!("{p}: {}", r.describe())))
                .collect();
            let any = ok[k].iter().any(|o| *o == Some(true));
            report.push(
                format!("{label}"),
                any,
                if tried.is_empty() {
                    "no candidate point".into()
                } else {
                    tried.join("; ")
                },
            );
        }
        report.push(
            "label assignment",
            false,
            "no assignment of labels to distinct points",
        );
    }

    // remaining singular points must be absorbed by the double line
    let rest: Vec<String> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| !assigned || !chosen.contains(i))
        .map(|(_, p)| {
            let on = if case.line == 1 {
                p.point.1.is_zero()
            } else {
                p.point.0.is_zero()
            };
            let t = local_tjurina(&f.reinterpret(&affine_ring(p.context.clone())), &p.point, 8);
            format!("{p} tjurina {t}{}", if on { "" } else { " off the line" })
        })
        .collect();
    if assigned {
        let off = rest.iter().any(|r| r.ends_with("off the line"));
        report.push(
            "other singular points",
            !off,
            if rest.is_empty() {
                "none".into()
            } else {
                rest.join("; ")
            },
        );
    }

    if let Some(c) = &case.construction {
        if assigned {
            regeneration_check(&mut report, &f, c, &chosen, &results);
        }
    }
    report
}

fn round_trip_check(report: &mut CaseReport, b: &BranchCurve, case: &CaseSpec) {
    match assemble_quartic(b, case.line)
        .and_then(|(x, curve)| Ok((gauge_equivalent(&x, &case.quartic, case.line)?, curve)))
    {
        Ok((same, curve)) => report.push(
            "assembly round trip",
            same,
            format!("scale {}", curve.scale),
        ),
        Err(e) => report.push("assembly round trip", false, e.to_string()),
    }
}

/// Rebuilds the sextic from the construction chains, free tangents taken
/// from the matched patterns.
fn regeneration_check(
    report: &mut CaseReport,
    f: &MPoly,
    c: &Construction,
    chosen: &[usize],
    results: &[Vec<Option<LabelCheck>>],
) {
    let mut chains = Vec::new();
    for (j, base) in c.points.iter().enumerate() {
        let mut tangents = Vec::new();
        let realized = c
            .labels
            .iter()
            .position(|&l| l == j)
            .and_then(|k| results[k][chosen[k]].as_ref());
        for (l, slot) in c.tangents[j].iter().enumerate() {
            match (slot, realized.and_then(|r| r.found.tangents.get(l))) {
                (Some(t), _) => tangents.push(t.clone()),
                (None, Some(t)) => tangents.push(t.clone()),
                (None, None) => {
                    report.push(
                        "regeneration",
                        false,
                        format!("no direction for tangents[{j}][{l}]"),
                    );
                    return;
                }
            }
        }
        chains.push(PointChain::new(base.clone(), c.mults[j].clone(), tangents));
    }
    match lin_sys(&full_system(f.ring(), 6), &chains) {
        Ok(sys) => {
            let same = sys.dim() == 1
                && canonical_basis(&sys.sections) == canonical_basis(std::slice::from_ref(f));
            report.push(
                "regeneration",
                same,
                format!("linear system of dimension {}", sys.dim()),
            );
        }
        Err(e) => report.push("regeneration", false, e.to_string()),
    }
}

/// Runs every case, in parallel when enabled.
pub fn verify_all(max_steps: usize) -> Vec<Result<CaseReport>> {
    crate::par::map(&CASE_NAMES, |n| {
        load_case(n).map(|c| verify_case(&c, max_steps))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn curve(s: &str) -> MPoly {
        parse_poly(&affine_ring(FieldContext::Rationals), s).unwrap()
    }

    fn origin() -> Point {
        (fe(0), fe(0))
    }

    fn matches(f: &MPoly, l: Label, proj: bool) -> bool {
        verify_pattern(f, &pattern(l, proj).unwrap(), &origin(), &[], 1)
            .unwrap()
            .matched
    }

    fn label(s: &str) -> Label {
        parse_labels(s).unwrap()[0]
    }

    #[test]
    fn labels_parse() {
        let l = parse_labels("E6D13").unwrap();
        assert_eq!(
            l,
            vec![
                Label::new(Family::E, 6).unwrap(),
                Label::new(Family::D, 13).unwrap()
            ]
        );
        assert_eq!(l[1].to_string(), "D13");
        assert!(parse_labels("E9").is_err());
        assert!(parse_labels("X1").is_err());
        assert_eq!(label("E8").next(), None);
    }

    #[test]
    fn table_shapes() {
        assert_eq!(pattern(label("E7"), false).unwrap().mults, vec![3, 2, 1]);
        assert_eq!(pattern(label("D5"), true).unwrap().mults, vec![2, 2]);
        assert_eq!(pattern(label("E6"), true).unwrap().mults, vec![2, 2, 2]);
        assert_eq!(
            pattern(label("D13"), false).unwrap().mults,
            vec![3, 2, 2, 2, 2, 1, 1]
        );
        assert_eq!(pattern(label("D6"), false).unwrap().mults, vec![3, 2]);
        assert_eq!(pattern(label("D7"), true).unwrap().mults, vec![3, 1, 1]);
        assert_eq!(pattern(label("A4"), false).unwrap().mults, vec![2, 2, 1, 1]);
        assert_eq!(pattern(label("E8"), true).unwrap().tangents.len(), 2);
        assert!(pattern(label("A2"), true).is_none());
    }

    #[test]
    fn normal_forms_match_their_rows() {
        let cases = [
            ("y^2 - x^2", "A1"),
            ("y^2 - x^3", "A2"),
            ("y^2 - x^4", "A3"),
            ("y^2 - x^5", "A4"),
            ("y^2 - x^6", "A5"),
            ("y^2*x - x^3", "D4"),
            ("y^2*x - x^4", "D5"),
            ("y^2*x - x^5", "D6"),
            ("y^2*x - x^6", "D7"),
            ("y^2*x - x^7", "D8"),
            ("y^3 - x^4", "E6"),
            ("y^3 - y*x^3", "E7"),
            ("y^3 - x^5", "E8"),
        ];
        for (f, l) in cases {
            let f = curve(f);
            let l = label(l);
            let p = pattern(l, false).unwrap();
            assert!(matches(&f, l, false), "{l} at its normal form");
            if let Some(n) = l.next() {
                assert!(!matches(&f, n, false), "{n} at the normal form of {l}");
            }
            assert_eq!(local_tjurina(&f, &origin(), 19), p.tjurina, "{l}");
        }
    }

    #[test]
    fn smooth_point_fails() {
        let f = curve("y - x^2");
        for l in ["A1", "D4", "E6", "E7"] {
            assert!(!matches(&f, label(l), false));
        }
        assert!(verify_pattern(
            &f,
            &pattern(label("A1"), false).unwrap(),
            &(fe(1), fe(0)),
            &[],
            1
        )
        .is_err());
    }

    #[test]
    fn vertical_first_direction() {
        let f = curve("x^3 - y^5");
        let m =
            verify_pattern(&f, &pattern(label("E8"), false).unwrap(), &origin(), &[], 1).unwrap();
        assert!(m.matched && m.transposed);
        assert!(
            matches(&f, label("E7"), false),
            "a prefix of the E8 profile"
        );
        assert!(matches(&curve("x^2*y - y^5"), label("D6"), false));
    }

    #[test]
    fn tangents_over_an_extension() {
        let mut p = pattern(label("A1"), false).unwrap();
        p.mults = vec![2, 1];
        p.tangents = vec![vec![None]];
        let m = verify_pattern(&curve("y^2 - 2*x^2 + x^3"), &p, &origin(), &[], 1).unwrap();
        assert!(m.matched);
        assert!(!m.context.is_rational());
        assert!(!matches(&curve("y^3 - 2*x^2*y"), label("D5"), false));
        assert!(matches(&curve("y^3 - 2*x^2*y"), label("D4"), false));
    }

    #[test]
    fn contact_with_line() {
        let f = curve("y^2 - x^3");
        assert_eq!(line_contact(&f, &origin(), 1), 3);
        assert_eq!(line_contact(&f, &origin(), 0), 2);
        assert_eq!(line_contact(&f, &(fe(1), fe(1)), 1), 0);
    }

    #[test]
    fn tjurina_counts_points_separately() {
        let f = curve("(y^2 - x^3)*(x - 3)");
        assert_eq!(local_tjurina(&f, &origin(), 19), 2);
        let nodes = curve("(y^2 - x^2)*(y - 5)");
        assert_eq!(local_tjurina(&nodes, &origin(), 19), 1);
        assert_eq!(local_tjurina(&nodes, &(fe(5), fe(5)), 19), 1);
    }

    #[test]
    fn infinity_points() {
        let r = crate::doublecover::plane_ring(FieldContext::Rationals);
        let g = parse_poly(&r, "x*y*z - x^3").unwrap();
        assert!(singular_points_at_infinity(&g, 10_000)
            .unwrap()
            .contains(&"(0 : 1 : 0)".to_string()));
        let smooth = parse_poly(&r, "x^2 + y^2 - z^2").unwrap();
        assert!(singular_points_at_infinity(&smooth, 10_000)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn unknown_case() {
        assert!(load_case("A1").is_err());
        let c = load_case("E6D13").unwrap();
        assert_eq!(c.labels.len(), 2);
        assert!(c.construction.is_some());
    }
}
