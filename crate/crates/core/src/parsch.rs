//! Schemes parametrizing point configurations that admit curves with
//! prescribed singularities.
//!
//! Each chain is a base point followed by infinitely near points. A chain's
//! tangent list has a concrete prefix (`T0`) followed by slots that may be
//! free (`None`). Points from the first free slot on, and every point of a
//! chain without a concrete base, become parameters: two ring variables per
//! such level, chains in input order. Concrete vectors after the first free
//! slot pin their point by an equation in `E` and may switch the chart.
//!
//! Variable layout: chain blocks, then one slack per unordered pair of every
//! `ne` group, then one slack per excluded system (the last `d` systems).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linsys::{self, next_center, normalize_tangent, LinearSystem, Point, PointChain};
use crate::matrix::{maximal_minors, PolyMatrix};
use crate::mpoly::{MPoly, MonomialOrder, PolyRing, Ring};
use crate::par;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularitySpecSet {
    pub systems: Vec<LinearSystem>,
    /// Concrete base points of the first `points.len()` chains.
    pub points: Vec<Point>,
    /// `mults[z][i][l]`: multiplicity for system `z`, chain `i`, level `l`.
    pub mults: Vec<Vec<Vec<u32>>>,
    /// Per chain; `None` is a free slot.
    pub tangents: Vec<Vec<Option<Point>>>,
    /// Groups of 1-based chain-level indices forced equal.
    pub eq: Vec<Vec<usize>>,
    /// Groups of 1-based chain-level indices forced pairwise distinct.
    pub ne: Vec<Vec<usize>>,
    /// Number of trailing systems that must not admit the singularities.
    pub d: usize,
}

impl SingularitySpecSet {
    pub fn nchains(&self) -> usize {
        self.mults.first().map_or(0, |m| m.len())
    }

    pub fn levels(&self, chain: usize) -> usize {
        self.mults[0][chain].len()
    }

    /// Length of the concrete tangent prefix of a chain.
    pub fn prefix_len(&self, chain: usize) -> usize {
        self.tangents
            .get(chain)
            .map_or(0, |t| t.iter().position(|s| s.is_none()).unwrap_or(t.len()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.systems.is_empty() {
            return Err(Error::Invalid("no linear systems".into()));
        }
        if self.mults.len() != self.systems.len() {
            return Err(Error::Invalid(format!(
                "{} multiplicity tables for {} systems",
                self.mults.len(),
                self.systems.len()
            )));
        }
        if self.d > self.systems.len() {
            return Err(Error::Invalid("d exceeds the number of systems".into()));
        }
        let n = self.nchains();
        if self.points.len() > n {
            return Err(Error::Invalid("more base points than chains".into()));
        }
        if self.tangents.len() > n {
            return Err(Error::Invalid("more tangent lists than chains".into()));
        }
        for (z, m) in self.mults.iter().enumerate() {
            if m.len() != n {
                return Err(Error::Invalid(format!(
                    "system {}: expected {n} chains",
                    z + 1
                )));
            }
            for (i, c) in m.iter().enumerate() {
                if c.len() != self.levels(i) {
                    return Err(Error::Invalid(format!(
                        "system {}, chain {}: level count differs from system 1",
                        z + 1,
                        i + 1
                    )));
                }
            }
        }
        for i in 0..n {
            let levels = self.levels(i);
            if levels == 0 {
                return Err(Error::Invalid(format!("chain {} has no levels", i + 1)));
            }
            let t = self.tangents.get(i).map_or(0, |t| t.len());
            if t + 1 > levels {
                return Err(Error::Invalid(format!(
                    "chain {}: {t} tangent slots for {levels} levels",
                    i + 1
                )));
            }
            for v in self.tangents.get(i).into_iter().flatten().flatten() {
                normalize_tangent(v)?;
            }
            if i >= self.points.len() && self.prefix_len(i) > 0 {
                return Err(Error::Invalid(format!(
                    "chain {}: concrete tangents need a concrete base point",
                    i + 1
                )));
            }
        }
        let total: usize = (0..n).map(|i| self.levels(i)).sum();
        for g in self.eq.iter().chain(&self.ne) {
            for &k in g {
                if k == 0 || k > total {
                    return Err(Error::Invalid(format!(
                        "point index {k} out of range 1..{total}"
                    )));
                }
            }
        }
        let ring = &self.systems[0].ring;
        if self
            .systems
            .iter()
            .any(|s| !crate::mpoly::same_ring(&s.ring, ring))
        {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn tangent_slot(&self, chain: usize, level: usize) -> Option<&Point> {
        self.tangents
            .get(chain)
            .and_then(|t| t.get(level))
            .and_then(|s| s.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamRole {
    /// Coordinate `axis` (0 = x, 1 = y) of a chain point; chains and
    /// levels are 0-based.
    Coord {
        chain: usize,
        level: usize,
        axis: usize,
    },
    /// Slack for the pair `(a, b)` (1-based point indices) of an `ne` group.
    NeSlack { a: usize, b: usize },
    /// Slack of the product generator of an excluded system (0-based).
    ReducednessSlack { system: usize },
}

impl fmt::Display for ParamRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamRole::Coord { chain, level, axis } => {
                write!(
                    f,
                    "p{}{} {}",
                    chain + 1,
                    "'".repeat(*level),
                    if *axis == 0 { "x" } else { "y" }
                )
            }
            ParamRole::NeSlack { a, b } => write!(f, "slack p#{a} != p#{b}"),
            ParamRole::ReducednessSlack { system } => {
                write!(f, "slack system {} excluded", system + 1)
            }
        }
    }
}

/// The parameter ring together with the resolved position of every chain
/// point as a polynomial in the parameters.
#[derive(Clone, Debug)]
pub struct ParamRing {
    pub ring: Ring,
    pub roles: Vec<ParamRole>,
    /// `points[i][l]`: coordinates of chain `i`, level `l`.
    pub points: Vec<Vec<(MPoly, MPoly)>>,
    /// Chart orientation (true = swapped) of the blow-up at each level.
    pub swapped: Vec<Vec<bool>>,
    /// First parametric level of each chain (`levels` if none).
    pub free_start: Vec<usize>,
    /// Infinitely-near-point equations.
    pub e: Vec<MPoly>,
}

impl ParamRing {
    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Variable index of a chain level's coordinate, if parametric.
    pub fn coord_var(&self, chain: usize, level: usize, axis: usize) -> Option<usize> {
        self.roles
            .iter()
            .position(|r| *r == ParamRole::Coord { chain, level, axis })
    }

    /// Chain-level points flattened in 1-based index order.
    pub fn flat_points(&self) -> Vec<&(MPoly, MPoly)> {
        self.points.iter().flatten().collect()
    }
}

/// `n = sum 2*(levels_i - prefix_i) - 2*#P + d + sum |Ne_j|(|Ne_j|-1)/2`.
pub fn param_count(spec: &SingularitySpecSet) -> usize {
    let chains: usize = (0..spec.nchains())
        .map(|i| 2 * (spec.levels(i) - spec.prefix_len(i)))
        .sum();
    let ne: usize = spec
        .ne
        .iter()
        .map(|g| g.len() * g.len().saturating_sub(1) / 2)
        .sum();
    chains - 2 * spec.points.len() + spec.d + ne
}

pub fn param_ring(spec: &SingularitySpecSet) -> Result<ParamRing> {
    spec.validate()?;
    let n = param_count(spec);
    let names: Vec<String> = (1..=n).map(|i| format!("R{i}")).collect();
    let ctx = spec.systems[0].ring.ctx().clone();
    let ring = PolyRing::new(ctx, names, MonomialOrder::Grevlex)?;
    let c = |v: &FieldElement| MPoly::constant(&ring, v.clone());

    let mut roles = Vec::new();
    let mut points = Vec::new();
    let mut swapped = Vec::new();
    let mut free_start = Vec::new();
    let mut e = Vec::new();
    for i in 0..spec.nchains() {
        let levels = spec.levels(i);
        let mut pts: Vec<(MPoly, MPoly)> = Vec::new();
        let mut sw = vec![false; levels];
        let start;
        let mut cur: (MPoly, MPoly);
        if i < spec.points.len() {
            // concrete prefix, blown up as in lin_sys; the last concrete
            // point is blown up in the default chart
            let t0 = spec.prefix_len(i);
            let mut p = spec.points[i].clone();
            pts.push((c(&p.0), c(&p.1)));
            for k in 0..t0.min(levels - 1) {
                let t = normalize_tangent(spec.tangent_slot(i, k).unwrap())?;
                let (next, s) = next_center(&p, &t);
                sw[k] = s;
                p = next;
                pts.push((c(&p.0), c(&p.1)));
            }
            start = t0 + 1;
            if start < levels {
                let xv = roles.len();
                roles.push(ParamRole::Coord {
                    chain: i,
                    level: start,
                    axis: 0,
                });
                roles.push(ParamRole::Coord {
                    chain: i,
                    level: start,
                    axis: 1,
                });
                cur = (c(&p.0), MPoly::var(&ring, xv + 1));
                e.push(MPoly::var(&ring, xv).sub(&cur.0));
                pts.push(cur.clone());
            } else {
                free_start.push(levels);
                points.push(pts);
                swapped.push(sw);
                continue;
            }
        } else {
            start = 0;
            let xv = roles.len();
            roles.push(ParamRole::Coord {
                chain: i,
                level: 0,
                axis: 0,
            });
            roles.push(ParamRole::Coord {
                chain: i,
                level: 0,
                axis: 1,
            });
            cur = (MPoly::var(&ring, xv), MPoly::var(&ring, xv + 1));
            pts.push(cur.clone());
        }
        free_start.push(start);
        let mut o = false;
        for level in start..levels - 1 {
            let slot = spec.tangent_slot(i, level).cloned();
            if let Some(v) = &slot {
                let comp = if o { &v.1 } else { &v.0 };
                if comp.is_zero() {
                    o = !o;
                }
            }
            sw[level] = o;
            let u = if o { cur.1.clone() } else { cur.0.clone() };
            let xv = roles.len();
            roles.push(ParamRole::Coord {
                chain: i,
                level: level + 1,
                axis: 0,
            });
            roles.push(ParamRole::Coord {
                chain: i,
                level: level + 1,
                axis: 1,
            });
            let next = match &slot {
                None if !o => (u, MPoly::var(&ring, xv + 1)),
                None => (MPoly::var(&ring, xv), u),
                Some(v) if !o => (u, c(&(&v.1 / &v.0))),
                Some(v) => (c(&(&v.0 / &v.1)), u),
            };
            for (axis, coord) in [&next.0, &next.1].into_iter().enumerate() {
                let eq = MPoly::var(&ring, xv + axis).sub(coord);
                if !eq.is_zero() {
                    e.push(eq);
                }
            }
            cur = next;
            pts.push(cur.clone());
        }
        points.push(pts);
        swapped.push(sw);
    }
    for g in &spec.ne {
        for x in 0..g.len() {
            for y in x + 1..g.len() {
                roles.push(ParamRole::NeSlack { a: g[x], b: g[y] });
            }
        }
    }
    for z in spec.systems.len() - spec.d..spec.systems.len() {
        roles.push(ParamRole::ReducednessSlack { system: z });
    }
    assert_eq!(roles.len(), n, "layout agrees with the parameter count");
    Ok(ParamRing {
        ring,
        roles,
        points,
        swapped,
        free_start,
        e,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CondMatrix {
    pub matrix: PolyMatrix,
    pub e: Vec<MPoly>,
}

/// `L` restricted by `lin_sys` through the concrete part of every chain with
/// a concrete base point (prefix plus one level).
pub fn restrict_concrete(spec: &SingularitySpecSet, z: usize) -> Result<LinearSystem> {
    let mut chains = Vec::new();
    for (i, p) in spec.points.iter().enumerate() {
        let t0 = spec.prefix_len(i);
        let keep = (t0 + 1).min(spec.levels(i));
        let tangents: Vec<Point> = (0..keep - 1)
            .map(|k| spec.tangent_slot(i, k).unwrap().clone())
            .collect();
        chains.push(PointChain::new(
            p.clone(),
            spec.mults[z][i][..keep].to_vec(),
            tangents,
        ));
    }
    linsys::lin_sys(&spec.systems[z], &chains)
}

/// Condition matrix of system `z` (columns = sections of `j`).
pub fn cnd_mt(
    r: &ParamRing,
    j: &LinearSystem,
    spec: &SingularitySpecSet,
    z: usize,
) -> Result<CondMatrix> {
    let np = r.nvars();
    let mut names: Vec<String> = r.ring.vars().to_vec();
    names.push("X".into());
    names.push("Y".into());
    let work = PolyRing::new(r.ring.ctx().clone(), names, MonomialOrder::Grevlex)?;
    let (xw, yw) = (np, np + 1);
    let to_work = |p: &MPoly| {
        let map: Vec<usize> = (0..np).collect();
        p.map_vars(&work, &map)
    };
    let plane_map = [xw, yw];
    let mut out = PolyMatrix::new(&r.ring, j.dim());
    for i in 0..spec.nchains() {
        let levels = spec.levels(i);
        let start = r.free_start[i];
        if start >= levels {
            continue;
        }
        let m = &spec.mults[z][i];
        let mut secs: Vec<MPoly> = j.sections.clone();
        if i < spec.points.len() {
            let mut p = spec.points[i].clone();
            for k in 0..start - 1 {
                let t = normalize_tangent(spec.tangent_slot(i, k).unwrap())?;
                let (next, swap) = next_center(&p, &t);
                secs = linsys::blow_up_step(&secs, &p, m[k], swap)?;
                p = next;
            }
            secs = linsys::blow_up_step(&secs, &p, m[start - 1], false)?;
        }
        let mut h: Vec<MPoly> = secs.iter().map(|s| s.map_vars(&work, &plane_map)).collect();
        for level in start..levels {
            let (px, py) = (
                &to_work(&r.points[i][level].0),
                &to_work(&r.points[i][level].1),
            );
            let subs = [(xw, px.clone()), (yw, py.clone())];
            let mult = m[level];
            let mut orders = Vec::new();
            for c in 0..mult {
                for b in (0..=c).rev() {
                    orders.push((b, c - b));
                }
            }
            let rows = par::map(&orders, |&(b, c)| {
                h.iter()
                    .map(|s| {
                        s.derivative(xw, b)
                            .derivative(yw, c)
                            .substitute_many(&subs)
                            .map_vars(&r.ring, &(0..np).chain([0, 0]).collect::<Vec<_>>())
                    })
                    .collect::<Vec<_>>()
            });
            for row in rows {
                out.push_row(row);
            }
            if level + 1 < levels {
                let swap = r.swapped[i][level];
                let (u, v, cu, cv) = if swap {
                    (yw, xw, py, px)
                } else {
                    (xw, yw, px, py)
                };
                let lin = MPoly::var(&work, u).sub(cu);
                let sub = lin.mul(&MPoly::var(&work, v)).add(cv);
                h = par::map(&h, |s| {
                    let mut l = s.substitute(v, &sub);
                    for _ in 0..mult {
                        l = l.peel_remainder_poly(u, cu).0;
                    }
                    l
                });
            }
        }
    }
    Ok(CondMatrix {
        matrix: out,
        e: r.e.clone(),
    })
}

/// Equality and distinctness generators.
pub fn eq_ne(r: &ParamRing, spec: &SingularitySpecSet) -> Result<Vec<MPoly>> {
    let pts = r.flat_points();
    let get = |k: usize| -> Result<&(MPoly, MPoly)> {
        pts.get(k.wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Invalid(format!("point index {k} out of range")))
    };
    let mut out = Vec::new();
    for g in &spec.eq {
        let mut dx = Vec::new();
        let mut dy = Vec::new();
        for w in g.windows(2) {
            let (a, b) = (get(w[0])?, get(w[1])?);
            dx.push(a.0.sub(&b.0));
            dy.push(a.1.sub(&b.1));
        }
        out.extend(dx.into_iter().chain(dy).filter(|p| !p.is_zero()));
    }
    let one = MPoly::one(&r.ring);
    for g in &spec.ne {
        for x in 0..g.len() {
            for y in x + 1..g.len() {
                let zi = r
                    .roles
                    .iter()
                    .position(|role| *role == ParamRole::NeSlack { a: g[x], b: g[y] })
                    .expect("slack allocated");
                let zv = MPoly::var(&r.ring, zi);
                let (a, b) = (get(g[x])?, get(g[y])?);
                let f1 = one.add(&zv.mul(&a.0.sub(&b.0)));
                let f2 = one.add(&zv.mul(&a.1.sub(&b.1)));
                out.push(f1.mul(&f2));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scheme {
    pub ring: Ring,
    pub generators: Vec<MPoly>,
    /// Meaning of each ring variable; empty for schemes built by hand.
    pub layout: Vec<ParamRole>,
}

impl Scheme {
    pub fn new(ring: &Ring, generators: Vec<MPoly>) -> Self {
        Scheme {
            ring: ring.clone(),
            generators,
            layout: Vec::new(),
        }
    }
}

/// Per-system intermediate data, kept for tracing.
#[derive(Clone, Debug)]
pub struct SystemConditions {
    pub restricted: LinearSystem,
    pub cond: CondMatrix,
    pub minors: Vec<MPoly>,
}

pub fn system_conditions(
    r: &ParamRing,
    spec: &SingularitySpecSet,
) -> Result<Vec<SystemConditions>> {
    let mut out = Vec::new();
    for z in 0..spec.systems.len() {
        let restricted = restrict_concrete(spec, z)?;
        let cond = cnd_mt(r, &restricted, spec, z)?;
        let minors = maximal_minors(&cond.matrix, restricted.dim());
        out.push(SystemConditions {
            restricted,
            cond,
            minors,
        });
    }
    Ok(out)
}

pub fn par_sch(spec: &SingularitySpecSet) -> Result<Scheme> {
    let r = param_ring(spec)?;
    let conds = system_conditions(&r, spec)?;
    assemble(&r, spec, &conds)
}

pub fn assemble(
    r: &ParamRing,
    spec: &SingularitySpecSet,
    conds: &[SystemConditions],
) -> Result<Scheme> {
    let nz = spec.systems.len();
    let mut gens: Vec<MPoly> = Vec::new();
    for c in &conds[..nz - spec.d] {
        gens.extend(c.minors.iter().filter(|m| !m.is_zero()).cloned());
    }
    gens.extend(r.e.iter().cloned());
    gens.extend(eq_ne(r, spec)?);
    let one = MPoly::one(&r.ring);
    for (k, c) in conds[nz - spec.d..].iter().enumerate() {
        let zi = r
            .roles
            .iter()
            .position(|role| {
                *role
                    == ParamRole::ReducednessSlack {
                        system: nz - spec.d + k,
                    }
            })
            .expect("slack allocated");
        let zv = MPoly::var(&r.ring, zi);
        let mut prod = one.clone();
        for m in &c.minors {
            prod = prod.mul(&one.add(&zv.mul(m)));
        }
        gens.push(prod);
    }
    Ok(Scheme {
        ring: r.ring.clone(),
        generators: gens,
        layout: r.roles.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::linsys::{affine_ring, full_system};
    use crate::mpoly::parse_poly;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn tacnode_matrix_on_conics() {
        let a = affine_ring(FieldContext::Rationals);
        let conics = full_system(&a, 2);
        let spec = SingularitySpecSet {
            systems: vec![conics.clone()],
            points: vec![],
            mults: vec![vec![vec![2, 2]]],
            tangents: vec![vec![None]],
            eq: vec![],
            ne: vec![],
            d: 0,
        };
        let r = param_ring(&spec).unwrap();
        assert_eq!(r.nvars(), 4);
        let m = cnd_mt(&r, &conics, &spec, 0).unwrap();
        assert_eq!(m.matrix.nrows(), 6);
        assert_eq!(m.matrix.ncols, 6);
        // first row: sections evaluated at (R1, R2)
        let row0: Vec<String> = m.matrix.rows[0].iter().map(|p| p.to_string()).collect();
        let expect: Vec<String> = conics
            .sections
            .iter()
            .map(|s| s.map_vars(&r.ring, &[0, 1]).to_string())
            .collect();
        assert_eq!(row0, expect);
        // E: the infinitely near point lies on the exceptional line x = R1
        assert_eq!(m.e, vec![parse_poly(&r.ring, "R3 - R1").unwrap()]);
    }

    #[test]
    fn concrete_chain_has_no_block() {
        let a = affine_ring(FieldContext::Rationals);
        let spec = SingularitySpecSet {
            systems: vec![full_system(&a, 3)],
            points: vec![(fe(0), fe(0))],
            mults: vec![vec![vec![2, 1, 1]]],
            tangents: vec![vec![Some((fe(1), fe(1))), Some((fe(0), fe(1)))]],
            eq: vec![],
            ne: vec![],
            d: 0,
        };
        let r = param_ring(&spec).unwrap();
        assert_eq!(r.nvars(), 0);
        let j = restrict_concrete(&spec, 0).unwrap();
        let m = cnd_mt(&r, &j, &spec, 0).unwrap();
        assert_eq!(m.matrix.nrows(), 0);
        // no rows and k sections: no condition
        let s = par_sch(&spec).unwrap();
        assert!(s.generators.is_empty());
    }

    #[test]
    fn eq_and_ne_generators() {
        let a = affine_ring(FieldContext::Rationals);
        let spec = SingularitySpecSet {
            systems: vec![full_system(&a, 2)],
            points: vec![],
            mults: vec![vec![vec![1], vec![1]]],
            tangents: vec![],
            eq: vec![vec![1, 2]],
            ne: vec![vec![1]],
            d: 0,
        };
        let r = param_ring(&spec).unwrap();
        let g = eq_ne(&r, &spec).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0], parse_poly(&r.ring, "R1 - R3").unwrap());
        assert_eq!(g[1], parse_poly(&r.ring, "R2 - R4").unwrap());
        let bad = SingularitySpecSet {
            eq: vec![vec![1, 9]],
            ..spec
        };
        assert!(matches!(param_ring(&bad), Err(Error::Invalid(_))));
    }
}
