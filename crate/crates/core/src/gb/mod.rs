//! Buchberger's algorithm, dimension counting and zero-dimensional solving.

pub mod roots;
pub mod solve;
pub mod upoly;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::mpoly::{same_ring, Exponents, MPoly, MonomialOrder, Ring};
use crate::parsch::Scheme;

pub use solve::{solve_zero_dim, SolutionPoint};

/// Default limit on the number of S-pairs processed by one Buchberger run.
pub const DEFAULT_MAX_STEPS: usize = 200_000;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    basis: Vec<MPoly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn basis(&self) -> &[MPoly] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<MPoly> {
        self.basis
    }

    /// The ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn reduce(&self, f: &MPoly) -> MPoly {
        normal_form(f, &self.basis)
    }

    pub fn contains(&self, f: &MPoly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Exponents> {
        self.basis.iter().map(|g| g.terms()[0].0.clone()).collect()
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn diff(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `p - c * x^shift * g`, all term lists sorted descending.
fn sub_scaled(
    order: MonomialOrder,
    p: &[(Exponents, FieldElement)],
    c: &FieldElement,
    shift: &[u32],
    g: &[(Exponents, FieldElement)],
) -> Vec<(Exponents, FieldElement)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |t: &(Exponents, FieldElement)| -> Exponents {
        t.0.iter().zip(shift).map(|(a, b)| a + b).collect()
    };
    let mut next_g = g.first().map(shifted);
    while i < p.len() || j < g.len() {
        let ord = match (p.get(i), &next_g) {
            (Some(a), Some(e)) => order.cmp(&a.0, e),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((next_g.take().unwrap(), -&(c * &g[j].1)));
                j += 1;
                next_g = g.get(j).map(shifted);
            }
            Ordering::Equal => {
                let v = &p[i].1 - &(c * &g[j].1);
                if !v.is_zero() {
                    out.push((next_g.take().unwrap(), v));
                }
                i += 1;
                j += 1;
                next_g = g.get(j).map(shifted);
            }
        }
    }
    out
}

/// Fully reduced remainder of `f` modulo `basis` (leading coefficients
/// need not be one).
pub fn normal_form(f: &MPoly, basis: &[MPoly]) -> MPoly {
    let ring = f.ring().clone();
    let order = ring.order();
    let mut p: Vec<(Exponents, FieldElement)> = f.terms().to_vec();
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (e, c) = &p[start];
        let hit = basis
            .iter()
            .find(|g| !g.is_zero() && divides(&g.terms()[0].0, e));
        match hit {
            Some(g) => {
                let (ge, gc) = &g.terms()[0];
                let q = c * &gc.inv();
                let shift = diff(e, ge);
                p = sub_scaled(order, &p[start..], &q, &shift, g.terms());
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    MPoly::from_sorted(&ring, rem)
}

pub fn s_polynomial(f: &MPoly, g: &MPoly) -> MPoly {
    let (fe, fc) = &f.terms()[0];
    let (ge, gc) = &g.terms()[0];
    let l = lcm(fe, ge);
    let a = f.mul_term(&diff(&l, fe), &gc.clone());
    let b = g.mul_term(&diff(&l, ge), &fc.clone());
    a.sub(&b)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
}

struct State {
    order: MonomialOrder,
    polys: Vec<MPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Exponents {
        &self.polys[i].terms()[0].0
    }

    /// Gebauer-Moeller installation of a new basis element.
    fn update(&mut self, h: usize) {
        let lh = self.lm(h).clone();
        let cands: Vec<(usize, Exponents)> = self
            .active
            .iter()
            .map(|&g| (g, lcm(&lh, self.lm(g))))
            .collect();
        let mut kept: Vec<(usize, Exponents)> = Vec::new();
        for (k, (g, l)) in cands.iter().enumerate() {
            if disjoint(&lh, self.lm(*g)) {
                kept.push((*g, l.clone()));
                continue;
            }
            let later_covers = cands[k + 1..].iter().any(|(_, l2)| divides(l2, l));
            let earlier_covers = kept.iter().any(|(_, l2)| divides(l2, l));
            if !later_covers && !earlier_covers {
                kept.push((*g, l.clone()));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !disjoint(&lh, self.lm(*g)))
            .map(|(g, l)| Pair {
                i: g.min(h),
                j: g.max(h),
                lcm: l,
            })
            .collect();
        let lm_of = |x: usize| self.polys[x].terms()[0].0.clone();
        self.pairs.retain(|p| {
            !(divides(&lh, &p.lcm)
                && lcm(&lm_of(p.i), &lh) != p.lcm
                && lcm(&lm_of(p.j), &lh) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        let polys = &self.polys;
        self.active
            .retain(|&g| !divides(&lh, &polys[g].terms()[0].0));
        self.active.push(h);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let da: u32 = a.lcm.iter().sum();
            let db: u32 = b.lcm.iter().sum();
            let ord = da
                .cmp(&db)
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` in their ring's
/// order, with at most `max_steps` S-pair reductions.
pub fn buchberger(gens: &[MPoly], max_steps: usize) -> Result<GroebnerBasis> {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .ok_or_else(|| Error::Invalid("no generators".into()))?;
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    buchberger_in(&ring, gens, max_steps)
}

/// As [`buchberger`], with an explicit ring so that empty inputs work.
pub fn buchberger_in(ring: &Ring, gens: &[MPoly], max_steps: usize) -> Result<GroebnerBasis> {
    let mut st = State {
        order: ring.order(),
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut input: Vec<MPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    input.sort_by(|a, b| {
        let order = ring.order();
        order
            .cmp(&a.terms()[0].0, &b.terms()[0].0)
            .then_with(|| a.len().cmp(&b.len()))
    });
    for g in input {
        let active: Vec<MPoly> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
        let h = normal_form(&g, &active);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(ring));
        }
        st.polys.push(h.monic());
        let idx = st.polys.len() - 1;
        st.update(idx);
    }
    let mut steps = 0;
    while let Some(p) = st.pop_pair() {
        steps += 1;
        if steps > max_steps {
            return Err(Error::StepCapExceeded(max_steps));
        }
        let s = s_polynomial(&st.polys[p.i], &st.polys[p.j]);
        let active: Vec<MPoly> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
        let h = normal_form(&s, &active);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(ring));
        }
        st.polys.push(h.monic());
        let idx = st.polys.len() - 1;
        st.update(idx);
    }
    let mut basis: Vec<MPoly> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
    basis.sort_by(|a, b| ring.order().cmp(&a.terms()[0].0, &b.terms()[0].0));
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<MPoly> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(normal_form(&basis[k], &others).monic());
    }
    Ok(GroebnerBasis {
        ring: ring.clone(),
        basis: reduced,
    })
}

fn unit(ring: &Ring) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        basis: vec![MPoly::one(ring)],
    }
}

/// Krull dimension from leading monomials: the size of a largest set of
/// variables none of whose monomials is a leading monomial. Returns -1 for
/// the unit ideal.
pub fn dimension_from_leading(nvars: usize, leads: &[Exponents]) -> i64 {
    if leads.iter().any(|e| e.iter().all(|&d| d == 0)) {
        return -1;
    }
    let supports: Vec<u64> = leads
        .iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    // a set U is independent iff no support is contained in U
    fn search(k: usize, n: usize, chosen: u64, size: i64, supports: &[u64], best: &mut i64) {
        if size + (n - k) as i64 <= *best {
            return;
        }
        if k == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << k);
        if supports.iter().all(|s| s & !with != 0) {
            search(k + 1, n, with, size + 1, supports, best);
        }
        search(k + 1, n, chosen, size, supports, best);
    }
    let mut best = 0;
    search(0, nvars, 0, 0, &supports, &mut best);
    best
}

/// Eliminates variables that some generator expresses linearly with a
/// constant coefficient, returning the reduced generator list and the
/// eliminated `(variable, value)` substitutions in elimination order.
pub fn eliminate_linear(gens: &[MPoly]) -> (Vec<MPoly>, Vec<(usize, MPoly)>) {
    let mut gens: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut subs: Vec<(usize, MPoly)> = Vec::new();
    loop {
        let mut found = None;
        'outer: for (k, g) in gens.iter().enumerate() {
            let nv = g.ring().nvars();
            for v in 0..nv {
                if g.degree_in(v) != Some(1) {
                    continue;
                }
                let cs = g.coeffs_in(v);
                if let Some(c) = cs[1].constant_value() {
                    let rest = cs[0].scale(&(-&c.inv()));
                    found = Some((k, v, rest));
                    break 'outer;
                }
            }
        }
        let Some((k, v, val)) = found else { break };
        gens.remove(k);
        gens = gens
            .into_iter()
            .map(|g| g.substitute(v, &val))
            .filter(|g| !g.is_zero())
            .collect();
        for s in subs.iter_mut() {
            s.1 = s.1.substitute(v, &val);
        }
        subs.push((v, val));
    }
    (gens, subs)
}

/// A generator carrying a variable found in no other generator, whose
/// coefficient of `var^0` is a nonzero constant. Over any point of the
/// remaining variables it cuts out finitely many values of `var`.
#[derive(Clone, Debug)]
pub struct PrivateGenerator {
    pub var: usize,
    pub poly: MPoly,
}

/// Separates private generators from the rest.
pub fn split_private(gens: &[MPoly]) -> (Vec<MPoly>, Vec<PrivateGenerator>) {
    let nv = gens.first().map_or(0, |g| g.ring().nvars());
    let mut count = vec![0usize; nv];
    for g in gens {
        for v in g.support() {
            count[v] += 1;
        }
    }
    let mut core = Vec::new();
    let mut private = Vec::new();
    for g in gens {
        let own: Vec<usize> = g.support().into_iter().filter(|&v| count[v] == 1).collect();
        let pick = match own.as_slice() {
            [v] => Some(*v),
            _ => None,
        };
        match pick {
            Some(v)
                if g.coeffs_in(v)[0]
                    .constant_value()
                    .is_some_and(|c| !c.is_zero()) =>
            {
                private.push(PrivateGenerator {
                    var: v,
                    poly: g.clone(),
                })
            }
            _ => core.push(g.clone()),
        }
    }
    (core, private)
}

/// Generators of the closure of the projection of `V(core, p)` away from
/// `p.var`, via a basis for an order eliminating that variable.
pub fn project_private(
    core: &[MPoly],
    p: &PrivateGenerator,
    max_steps: usize,
) -> Result<Vec<MPoly>> {
    let ring = p.poly.ring().clone();
    if p.poly.support().len() == 1 {
        // a univariate condition of positive degree always has roots
        return Ok(core.to_vec());
    }
    let n = ring.nvars();
    let mut perm: Vec<usize> = vec![p.var];
    perm.extend((0..n).filter(|&v| v != p.var));
    let names: Vec<String> = perm.iter().map(|&v| ring.vars()[v].clone()).collect();
    let elim = elimination_ring(&ring, names)?;
    let mut to = vec![0; n];
    for (j, &v) in perm.iter().enumerate() {
        to[v] = j;
    }
    let mut gens: Vec<MPoly> = core.iter().map(|g| g.map_vars(&elim, &to)).collect();
    gens.push(p.poly.map_vars(&elim, &to));
    let gb = buchberger_in(&elim, &gens, max_steps)?;
    Ok(gb
        .basis()
        .iter()
        .filter(|g| !g.contains_var(0))
        .map(|g| g.map_vars(&ring, &perm))
        .collect())
}

fn elimination_ring(ring: &Ring, names: Vec<String>) -> Result<Ring> {
    crate::mpoly::PolyRing::new(ring.ctx().clone(), names, MonomialOrder::Block(1))
}

/// Ring on a subset of the variables of `ring`, with the index map from
/// `ring` (unused variables map to 0 and must not occur).
pub fn sub_ring(ring: &Ring, keep: &[usize], order: MonomialOrder) -> Result<(Ring, Vec<usize>)> {
    let names: Vec<String> = keep.iter().map(|&v| ring.vars()[v].clone()).collect();
    let small = crate::mpoly::PolyRing::new(ring.ctx().clone(), names, order)?;
    let mut map = vec![0; ring.nvars()];
    for (j, &v) in keep.iter().enumerate() {
        map[v] = j;
    }
    Ok((small, map))
}

/// Reduced form of a system: linearly determined variables substituted,
/// private generators projected out.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub core: Vec<MPoly>,
    pub core_vars: Vec<usize>,
    pub linear: Vec<(usize, MPoly)>,
    pub private: Vec<PrivateGenerator>,
}

pub fn reduce_system(gens: &[MPoly], max_steps: usize) -> Result<Reduction> {
    let ring = gens.first().map(|g| g.ring().clone());
    let (rest, linear) = eliminate_linear(gens);
    let (mut core, mut private) = split_private(&rest);
    // low-degree conditions first: they shrink the ideal cheaply
    private.sort_by_key(|p| (p.poly.degree_in(p.var), p.poly.len()));
    for p in &private {
        if core.iter().any(|g| g.is_constant()) {
            break;
        }
        core = project_private(&core, p, max_steps)?;
    }
    let nv = ring.map_or(0, |r| r.nvars());
    let gone: Vec<usize> = linear
        .iter()
        .map(|s| s.0)
        .chain(private.iter().map(|p| p.var))
        .collect();
    let core_vars = (0..nv).filter(|v| !gone.contains(v)).collect();
    Ok(Reduction {
        core,
        core_vars,
        linear,
        private,
    })
}

/// Krull dimension of the scheme, computed from a grevlex basis after
/// eliminating linearly determined variables and projecting away private
/// generators (whose fibres are finite).
pub fn dimension_probe(s: &Scheme, max_steps: usize) -> Result<i64> {
    let ring = s.ring.with_order(MonomialOrder::Grevlex);
    let gens: Vec<MPoly> = s.generators.iter().map(|g| g.reinterpret(&ring)).collect();
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(ring.nvars() as i64);
    }
    let red = reduce_system(&gens, max_steps)?;
    if red.core.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ok(-1);
    }
    if red.core_vars.is_empty() {
        return Ok(0);
    }
    let (small, map) = sub_ring(&ring, &red.core_vars, MonomialOrder::Grevlex)?;
    let moved: Vec<MPoly> = red.core.iter().map(|g| g.map_vars(&small, &map)).collect();
    let gb = buchberger_in(&small, &moved, max_steps)?;
    if gb.is_unit() {
        return Ok(-1);
    }
    Ok(dimension_from_leading(
        small.nvars(),
        &gb.leading_monomials(),
    ))
}

/// The scheme cut by extra equations.
pub fn slice(s: &Scheme, extra: &[MPoly]) -> Scheme {
    let mut out = s.clone();
    out.generators.extend(extra.iter().cloned());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::mpoly::{parse_poly, PolyRing};

    fn ring(vars: &[&str], order: MonomialOrder) -> Ring {
        PolyRing::new(FieldContext::Rationals, vars.iter().copied(), order).unwrap()
    }

    fn polys(r: &Ring, src: &[&str]) -> Vec<MPoly> {
        src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn trivial_bases() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let gb = buchberger(&polys(&r, &["x^2 - 1", "x - 1"]), 100).unwrap();
        assert_eq!(gb.basis(), polys(&r, &["x - 1"]).as_slice());
        let gb = buchberger(&polys(&r, &["x + y", "x - y"]), 100).unwrap();
        let mut b: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        b.sort();
        assert_eq!(b, vec!["x", "y"]);
    }

    #[test]
    fn cyclic3_lex() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let gens = polys(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]);
        let gb = buchberger(&gens, 1000).unwrap();
        for g in &gens {
            assert!(gb.contains(g));
        }
        assert!(gb.basis().iter().any(|g| g.to_string() == "z^3 - 1"));
        for a in gb.basis() {
            for b in gb.basis() {
                assert!(normal_form(&s_polynomial(a, b), gb.basis()).is_zero());
            }
        }
    }

    #[test]
    fn step_cap_is_explicit() {
        let r = ring(&["a", "b", "c", "d"], MonomialOrder::Lex);
        let gens = polys(
            &r,
            &[
                "a + b + c + d",
                "a*b + b*c + c*d + d*a",
                "a*b*c + b*c*d + c*d*a + d*a*b",
                "a*b*c*d - 1",
            ],
        );
        assert!(matches!(
            buchberger(&gens, 2),
            Err(Error::StepCapExceeded(2))
        ));
        assert!(buchberger(&gens, 10_000).is_ok());
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        assert_eq!(
            dimension_probe(&Scheme::new(&r, polys(&r, &["x"])), 100).unwrap(),
            1
        );
        assert_eq!(dimension_probe(&Scheme::new(&r, vec![]), 100).unwrap(), 2);
        assert_eq!(
            dimension_probe(&Scheme::new(&r, polys(&r, &["x*y - 1", "x^2"])), 100).unwrap(),
            -1
        );
        let r3 = ring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let s = Scheme::new(&r3, polys(&r3, &["x*y", "x*z"]));
        assert_eq!(dimension_probe(&s, 100).unwrap(), 2);
        let inconsistent = Scheme::new(&r, polys(&r, &["x^2 + 1", "x^2"]));
        assert_eq!(
            dimension_probe(&slice(&inconsistent, &polys(&r, &["y"])), 100).unwrap(),
            -1
        );
    }
}
