//! Linear systems of affine plane curves with prescribed multiplicities at
//! ordinary and infinitely near points.
//!
//! Blow-up charts: at `(a, b)` the default chart substitutes
//! `(x, (x-a)*y + b)` with exceptional line `x = a`; when the tangent
//! direction is `(0, 1)` the chart is `((y-b)*x + a, y)` with exceptional
//! line `y = b`. After a default blow-up along tangent `(t1, t2)` the next
//! center is `(a, t2/t1)`; after a swapped one it is `(0, b)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::matrix;
use crate::mpoly::{Exponents, MPoly, MonomialOrder, PolyRing, Ring};

pub type Point = (FieldElement, FieldElement);

/// The affine plane ring `k[x, y]`.
pub fn affine_ring(ctx: FieldContext) -> Ring {
    PolyRing::new(ctx, ["x", "y"], MonomialOrder::Lex).expect("distinct names")
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub ring: Ring,
    pub degree: u32,
    pub sections: Vec<MPoly>,
}

impl LinearSystem {
    pub fn dim(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    fn with_sections(&self, sections: Vec<MPoly>) -> LinearSystem {
        LinearSystem {
            ring: self.ring.clone(),
            degree: self.degree,
            sections,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointChain {
    pub base: Point,
    pub mults: Vec<u32>,
    pub tangents: Vec<Point>,
}

impl PointChain {
    pub fn new(base: Point, mults: Vec<u32>, tangents: Vec<Point>) -> Self {
        PointChain {
            base,
            mults,
            tangents,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mults.is_empty() {
            return Err(Error::Invalid("chain without multiplicities".into()));
        }
        if self.tangents.len() + 1 != self.mults.len() {
            return Err(Error::Invalid(format!(
                "chain with {} multiplicities needs {} tangents, got {}",
                self.mults.len(),
                self.mults.len() - 1,
                self.tangents.len()
            )));
        }
        for t in &self.tangents {
            normalize_tangent(t)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartStep {
    pub center: Point,
    pub swap: bool,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ChartState {
    pub history: Vec<ChartStep>,
}

/// Scales a direction so its first nonzero coordinate is 1.
pub fn normalize_tangent(t: &Point) -> Result<Point> {
    if !t.0.is_zero() {
        Ok((FieldElement::one(), &t.1 / &t.0))
    } else if !t.1.is_zero() {
        Ok((FieldElement::zero(), FieldElement::one()))
    } else {
        Err(Error::Invalid("zero tangent vector".into()))
    }
}

/// Next center on the exceptional divisor after blowing up `p` along `t`
/// (normalized), and whether the swapped chart is used.
pub fn next_center(p: &Point, t: &Point) -> (Point, bool) {
    if t.0.is_zero() {
        ((FieldElement::zero(), p.1.clone()), true)
    } else {
        ((p.0.clone(), t.1.clone()), false)
    }
}

pub fn full_system(ring: &Ring, d: u32) -> LinearSystem {
    let mut sections = Vec::new();
    for total in (0..=d).rev() {
        for i in (0..=total).rev() {
            sections.push(MPoly::monomial(
                ring,
                vec![i, total - i],
                FieldElement::one(),
            ));
        }
    }
    let mut l = LinearSystem {
        ring: ring.clone(),
        degree: d,
        sections,
    };
    l.sections = canonical_basis(&l.sections);
    l
}

/// Row-reduced basis of the span: coefficient vectors over the union of
/// monomials in descending order, in reduced echelon form with unit pivots.
pub fn canonical_basis(polys: &[MPoly]) -> Vec<MPoly> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let order = ring.order();
    let set: BTreeSet<Exponents> = polys
        .iter()
        .flat_map(|p| p.terms().iter().map(|(e, _)| e.clone()))
        .collect();
    let mut monos: Vec<Exponents> = set.into_iter().collect();
    monos.sort_by(|a, b| order.cmp(b, a));
    let rows: Vec<Vec<FieldElement>> = polys
        .iter()
        .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
        .collect();
    let (red, _) = matrix::rref(&rows, monos.len());
    red.into_iter()
        .map(|row| {
            let terms: Vec<_> = monos
                .iter()
                .zip(row)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c))
                .collect();
            MPoly::from_sorted(&ring, terms)
        })
        .collect()
}

fn shift_to(f: &MPoly, p: &Point) -> MPoly {
    f.shift(&[(0, p.0.clone()), (1, p.1.clone())])
}

/// Multiplicity of `f` at `p` (0 when `p` is off the curve).
pub fn multiplicity_at(f: &MPoly, p: &Point) -> u32 {
    shift_to(f, p).low_degree().unwrap_or(u32::MAX)
}

fn combine(sections: &[MPoly], v: &[FieldElement]) -> MPoly {
    let mut acc = MPoly::zero(sections[0].ring());
    for (s, c) in sections.iter().zip(v) {
        if !c.is_zero() {
            acc = acc.add(&s.scale(c));
        }
    }
    acc
}

/// Subspace of sections vanishing to order `m` at `p`.
pub fn impose_ordinary_sections(sections: &[MPoly], p: &Point, m: u32) -> Vec<MPoly> {
    if m == 0 || sections.is_empty() {
        return sections.to_vec();
    }
    let shifted: Vec<MPoly> = sections
        .iter()
        .map(|s| shift_to(s, p).truncate_below(m))
        .collect();
    let mut rows = Vec::new();
    for total in 0..m {
        for i in 0..=total {
            let e = vec![i, total - i];
            rows.push(shifted.iter().map(|s| s.coeff(&e)).collect::<Vec<_>>());
        }
    }
    let ns = matrix::nullspace(&rows, sections.len());
    let out: Vec<MPoly> = ns.iter().map(|v| combine(sections, v)).collect();
    canonical_basis(&out)
}

pub fn impose_ordinary(l: &LinearSystem, p: &Point, m: u32) -> LinearSystem {
    l.with_sections(impose_ordinary_sections(&l.sections, p, m))
}

/// Strict transform of one polynomial: substitute the chart and divide out
/// the exceptional line `mult` times.
pub fn blow_up_poly(f: &MPoly, center: &Point, mult: u32, swap: bool) -> Result<MPoly> {
    let r = f.ring();
    let (a, b) = center;
    let (u, v, cu, cv) = if swap { (1, 0, b, a) } else { (0, 1, a, b) };
    let lin = MPoly::var(r, u).sub(&MPoly::constant(r, cu.clone()));
    let sub = lin
        .mul(&MPoly::var(r, v))
        .add(&MPoly::constant(r, cv.clone()));
    f.substitute(v, &sub).div_linear_power(u, cu, mult)
}

pub fn blow_up_step(
    sections: &[MPoly],
    center: &Point,
    mult: u32,
    swap: bool,
) -> Result<Vec<MPoly>> {
    sections
        .iter()
        .map(|s| blow_up_poly(s, center, mult, swap))
        .collect()
}

/// Inverse of [`blow_up_poly`]: `(u-cu)^mult * g` with `v` replaced by
/// `(v-cv)/(u-cu)`.
pub fn blow_down_poly(g: &MPoly, step: &ChartStep) -> MPoly {
    let r = g.ring();
    let (a, b) = &step.center;
    let (u, v, cu, cv) = if step.swap {
        (1, 0, b, a)
    } else {
        (0, 1, a, b)
    };
    let lin = MPoly::var(r, u).sub(&MPoly::constant(r, cu.clone()));
    let vv = MPoly::var(r, v).sub(&MPoly::constant(r, cv.clone()));
    let coeffs = g.coeffs_in(v);
    let d = coeffs.len().saturating_sub(1) as u32;
    let mut acc = MPoly::zero(r);
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&c.mul(&vv.pow(j as u32)).mul(&lin.pow(d - j as u32)));
    }
    if step.mult >= d {
        acc.mul(&lin.pow(step.mult - d))
    } else {
        acc.div_linear_power(u, cu, d - step.mult)
            .expect("blow-down of a strict transform is polynomial")
    }
}

pub fn blow_down(sections: &[MPoly], state: &ChartState) -> Vec<MPoly> {
    sections
        .iter()
        .map(|s| {
            state
                .history
                .iter()
                .rev()
                .fold(s.clone(), |g, st| blow_down_poly(&g, st))
        })
        .collect()
}

/// Subsystem of `l` with the prescribed multiplicities along every chain.
pub fn lin_sys(l: &LinearSystem, chains: &[PointChain]) -> Result<LinearSystem> {
    for c in chains {
        c.validate()?;
    }
    let mut secs = l.sections.clone();
    for c in chains {
        secs = impose_ordinary_sections(&secs, &c.base, c.mults[0]);
    }
    for c in chains {
        let mut p0 = c.base.clone();
        let mut state = ChartState::default();
        for (j, t) in c.tangents.iter().enumerate() {
            if secs.is_empty() {
                break;
            }
            let t = normalize_tangent(t)?;
            let (next, swap) = next_center(&p0, &t);
            secs = blow_up_step(&secs, &p0, c.mults[j], swap)?;
            state.history.push(ChartStep {
                center: p0,
                swap,
                mult: c.mults[j],
            });
            p0 = next;
            secs = impose_ordinary_sections(&secs, &p0, c.mults[j + 1]);
        }
        if !secs.is_empty() {
            secs = canonical_basis(&blow_down(&secs, &state));
        }
    }
    Ok(l.with_sections(secs))
}

/// Actual multiplicities of `f` at the points of the chain. Missing trailing
/// tangents end the profile early; once the chain leaves the curve the
/// remaining entries are 0.
pub fn multiplicity_profile(f: &MPoly, chain: &PointChain) -> Result<Vec<u32>> {
    if f.is_zero() {
        return Err(Error::Invalid(
            "zero polynomial has no multiplicity profile".into(),
        ));
    }
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut p = chain.base.clone();
    for level in 0..=chain.tangents.len() {
        let m = multiplicity_at(&g, &p);
        out.push(m);
        if level == chain.tangents.len() {
            break;
        }
        if m == 0 {
            out.resize(chain.tangents.len() + 1, 0);
            break;
        }
        let t = normalize_tangent(&chain.tangents[level])?;
        let (next, swap) = next_center(&p, &t);
        g = blow_up_poly(&g, &p, m, swap)?;
        p = next;
    }
    Ok(out)
}
