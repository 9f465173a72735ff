//! Seeded random instances and independent oracles shared by the property
//! suite and the acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use singcurve::doublecover::binary_form_sqrt;
use singcurve::field::{parse_minpoly, FieldContext, FieldElement};
use singcurve::gb::{buchberger, normal_form, s_polynomial, DEFAULT_MAX_STEPS};
use singcurve::linsys::{
    affine_ring, blow_down_poly, blow_up_poly, full_system, lin_sys, multiplicity_at, ChartStep,
    PointChain,
};
use singcurve::mpoly::{MPoly, MonomialOrder, PolyRing, Ring};
use singcurve::parsch::{param_ring, system_conditions, SingularitySpecSet};

type Q = BigRational;
pub type Point = (FieldElement, FieldElement);

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn rat(x: &FieldElement) -> Q {
    x.as_rational().cloned().expect("rational value")
}

// ---- bivariate polynomials in chart coordinates (u, v) ----

type Bi = BTreeMap<(u32, u32), Q>;

fn bi_add_term(p: &mut Bi, e: (u32, u32), c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(e).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

fn bi_mul(a: &Bi, b: &Bi) -> Bi {
    let mut out = Bi::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            bi_add_term(&mut out, (ea.0 + eb.0, ea.1 + eb.1), ca * cb);
        }
    }
    out
}

fn bi_pow(a: &Bi, n: u32) -> Bi {
    let mut out = Bi::from([((0, 0), Q::one())]);
    for _ in 0..n {
        out = bi_mul(&out, a);
    }
    out
}

fn bi_lin(c: Q, e: (u32, u32)) -> Bi {
    let mut p = Bi::new();
    bi_add_term(&mut p, (0, 0), c);
    bi_add_term(&mut p, e, Q::one());
    p
}

/// x^p y^q expanded around (a, b): (a + u)^p (b + v)^q.
fn centered_monomial(p: u32, qq: u32, a: &Q, b: &Q) -> Bi {
    bi_mul(
        &bi_pow(&bi_lin(a.clone(), (1, 0)), p),
        &bi_pow(&bi_lin(b.clone(), (0, 1)), qq),
    )
}

/// Chart substitution followed by division by the exceptional coordinate.
/// Direction `(1, s)` uses (u, v) -> (u, u (s + v)); `(0, 1)` uses
/// (u, v) -> (u v, v).
fn chart(p: &Bi, slope: Option<&Q>, m: u32) -> Bi {
    let mut out = Bi::new();
    for ((a, b), c) in p {
        match slope {
            Some(s) => {
                let tail = bi_pow(&bi_lin(s.clone(), (0, 1)), *b);
                for ((ta, tb), tc) in tail {
                    let e = a + b + ta;
                    assert!(e >= m, "strict transform is not polynomial");
                    bi_add_term(&mut out, (e - m, tb), c * tc);
                }
            }
            None => {
                let e = a + b;
                assert!(e >= m, "strict transform is not polynomial");
                bi_add_term(&mut out, (*a, e - m), c.clone());
            }
        }
    }
    out
}

/// Null space of the columns, as coefficient vectors over the columns.
fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[i][free].clone();
        }
        out.push(v);
    }
    out
}

fn combine<T: Clone>(w: &[Q], items: &[T], zero: T, add: impl Fn(&T, &T, &Q) -> T) -> T {
    let mut acc = zero;
    for (c, it) in w.iter().zip(items) {
        if !c.is_zero() {
            acc = add(&acc, it, c);
        }
    }
    acc
}

fn bi_axpy(acc: &Bi, p: &Bi, c: &Q) -> Bi {
    let mut out = acc.clone();
    for (e, v) in p {
        bi_add_term(&mut out, *e, v * c);
    }
    out
}

fn vec_axpy(acc: &Vec<Q>, p: &Vec<Q>, c: &Q) -> Vec<Q> {
    acc.iter().zip(p).map(|(a, b)| a + b * c).collect()
}

/// Dimension of the degree-`d` affine system with the given chains, found by
/// stacking the low-order Taylor coefficients of the strict transforms of
/// every surviving combination of monomials.
pub fn brute_force_dim(d: u32, chains: &[(Q, Q, Vec<u32>, Vec<Option<Q>>)]) -> usize {
    let monos: Vec<(u32, u32)> = (0..=d)
        .flat_map(|t| (0..=t).map(move |i| (i, t - i)))
        .collect();
    let n = monos.len();
    let mut basis: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    for (a, b, mults, slopes) in chains {
        let centered: Vec<Bi> = monos
            .iter()
            .map(|&(p, qq)| centered_monomial(p, qq, a, b))
            .collect();
        let mut polys: Vec<Bi> = basis
            .iter()
            .map(|c| combine(c, &centered, Bi::new(), bi_axpy))
            .collect();
        for (l, &m) in mults.iter().enumerate() {
            let low: Vec<(u32, u32)> = (0..m)
                .flat_map(|t| (0..=t).map(move |i| (i, t - i)))
                .collect();
            let rows: Vec<Vec<Q>> = low
                .iter()
                .map(|e| {
                    polys
                        .iter()
                        .map(|p| p.get(e).cloned().unwrap_or_else(Q::zero))
                        .collect()
                })
                .collect();
            let w = nullspace(&rows, polys.len());
            let zero_vec = vec![Q::zero(); n];
            basis = w
                .iter()
                .map(|wi| combine(wi, &basis, zero_vec.clone(), vec_axpy))
                .collect();
            polys = w
                .iter()
                .map(|wi| combine(wi, &polys, Bi::new(), bi_axpy))
                .collect();
            if basis.is_empty() {
                return 0;
            }
            if l < slopes.len() {
                polys = polys
                    .iter()
                    .map(|p| chart(p, slopes[l].as_ref(), m))
                    .collect();
            }
        }
    }
    basis.len()
}

// ---- instances ----

#[derive(Clone, Debug)]
pub struct LinsysInstance {
    pub degree: u32,
    pub chains: Vec<PointChain>,
}

pub fn random_linsys<R: Rng>(rng: &mut R) -> LinsysInstance {
    let degree = rng.gen_range(1..=4);
    let nchains = rng.gen_range(1..=2);
    let mut bases: Vec<(i64, i64)> = Vec::new();
    while bases.len() < nchains {
        let p = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        if !bases.contains(&p) {
            bases.push(p);
        }
    }
    let chains = bases
        .into_iter()
        .map(|(a, b)| {
            let len = rng.gen_range(1..=3);
            let mut mults = vec![rng.gen_range(1..=3u32)];
            for _ in 1..len {
                let prev = *mults.last().unwrap();
                mults.push(rng.gen_range(1..=prev));
            }
            let tangents = (1..len)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        (fe(0), fe(1))
                    } else {
                        (fe(rng.gen_range(1..=2)), fe(rng.gen_range(-2..=2)))
                    }
                })
                .collect();
            PointChain::new((fe(a), fe(b)), mults, tangents)
        })
        .collect();
    LinsysInstance { degree, chains }
}

pub fn check_linsys(inst: &LinsysInstance) -> Result<(), String> {
    let ring = affine_ring(FieldContext::Rationals);
    let sys = lin_sys(&full_system(&ring, inst.degree), &inst.chains).map_err(|e| e.to_string())?;
    let oracle: Vec<_> = inst
        .chains
        .iter()
        .map(|c| {
            let slopes = c
                .tangents
                .iter()
                .map(|(t1, t2)| {
                    if t1.is_zero() {
                        None
                    } else {
                        Some(rat(t2) / rat(t1))
                    }
                })
                .collect();
            (rat(&c.base.0), rat(&c.base.1), c.mults.clone(), slopes)
        })
        .collect();
    let expected = brute_force_dim(inst.degree, &oracle);
    if sys.dim() != expected {
        return Err(format!(
            "{inst:?}: lin_sys gives {} but corank is {expected}",
            sys.dim()
        ));
    }
    for s in &sys.sections {
        for c in &inst.chains {
            let m = multiplicity_at(s, &c.base);
            if m < c.mults[0] {
                return Err(format!("section {s} has multiplicity {m} at the base"));
            }
        }
    }
    Ok(())
}

fn small_coeff<R: Rng>(rng: &mut R) -> FieldElement {
    FieldElement::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

fn random_poly<R: Rng>(rng: &mut R, ring: &Ring, degree: u32, terms: usize) -> MPoly {
    let n = ring.nvars();
    let mut f = MPoly::zero(ring);
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        let mut left = rng.gen_range(0..=degree);
        for slot in e.iter_mut().take(n - 1) {
            let k = rng.gen_range(0..=left);
            *slot = k;
            left -= k;
        }
        e[n - 1] = left;
        f = f.add(&MPoly::monomial(ring, e, small_coeff(rng)));
    }
    f
}

/// A polynomial of degree at most `degree` with multiplicity at least `m`
/// at `p`, plus the blow-up direction and the chart step.
pub fn random_section<R: Rng>(rng: &mut R) -> (MPoly, ChartStep) {
    let ring = affine_ring(FieldContext::Rationals);
    let m = rng.gen_range(0..=3u32);
    let degree = rng.gen_range(m.max(1)..=5);
    let (a, b) = (fe(rng.gen_range(-3..=3)), fe(rng.gen_range(-3..=3)));
    let xs = MPoly::var(&ring, 0).sub(&MPoly::constant(&ring, a.clone()));
    let ys = MPoly::var(&ring, 1).sub(&MPoly::constant(&ring, b.clone()));
    let mut f = MPoly::zero(&ring);
    for _ in 0..rng.gen_range(1..=6) {
        let t = rng.gen_range(m..=degree);
        let i = rng.gen_range(0..=t);
        f = f.add(&xs.pow(i).mul(&ys.pow(t - i)).scale(&small_coeff(rng)));
    }
    if f.is_zero() {
        f = xs.pow(m);
    }
    let swap = rng.gen_bool(0.5);
    (
        f,
        ChartStep {
            center: (a, b),
            swap,
            mult: m,
        },
    )
}

pub fn check_blow_round_trip(f: &MPoly, step: &ChartStep) -> Result<(), String> {
    let g = blow_up_poly(f, &step.center, step.mult, step.swap).map_err(|e| e.to_string())?;
    let back = blow_down_poly(&g, step);
    if &back != f {
        return Err(format!("{f} -> {g} -> {back}"));
    }
    Ok(())
}

/// Conics through four fixed points with one free double point, and a
/// specialization of the free point: half the time one of the diagonal
/// points of the quadrilateral, otherwise a random point.
#[derive(Clone, Debug)]
pub struct ConicInstance {
    pub fixed: Vec<(i64, i64)>,
    pub point: (Q, Q),
}

fn collinear(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) == 0
}

/// Intersection of lines p1p2 and p3p4, if finite.
fn meet(p1: (i64, i64), p2: (i64, i64), p3: (i64, i64), p4: (i64, i64)) -> Option<(Q, Q)> {
    let (a1, b1) = (p2.1 - p1.1, p1.0 - p2.0);
    let c1 = a1 * p1.0 + b1 * p1.1;
    let (a2, b2) = (p4.1 - p3.1, p3.0 - p4.0);
    let c2 = a2 * p3.0 + b2 * p3.1;
    let det = a1 * b2 - a2 * b1;
    if det == 0 {
        return None;
    }
    Some((
        Q::new(BigInt::from(c1 * b2 - c2 * b1), BigInt::from(det)),
        Q::new(BigInt::from(a1 * c2 - a2 * c1), BigInt::from(det)),
    ))
}

pub fn random_conic_instance<R: Rng>(rng: &mut R) -> ConicInstance {
    let fixed = loop {
        let pts: Vec<(i64, i64)> = (0..4)
            .map(|_| (rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
            .collect();
        let ok = (0..4).all(|i| {
            (i + 1..4).all(|j| pts[i] != pts[j])
                && (0..4).all(|j| {
                    (0..4).all(|k| i == j || j == k || i == k || !collinear(pts[i], pts[j], pts[k]))
                })
        });
        if ok {
            break pts;
        }
    };
    let diag: Vec<(Q, Q)> = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
        .iter()
        .filter_map(|&(i, j, k, l)| meet(fixed[i], fixed[j], fixed[k], fixed[l]))
        .collect();
    let point = if !diag.is_empty() && rng.gen_bool(0.5) {
        diag.choose(rng).unwrap().clone()
    } else {
        loop {
            let p = (
                q(rng.gen_range(-4..=4)),
                Q::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(2)),
            );
            if !fixed.iter().any(|f| q(f.0) == p.0 && q(f.1) == p.1) {
                break p;
            }
        }
    };
    ConicInstance { fixed, point }
}

/// Whether the maximal minors vanish at the point, and whether a conic
/// with the required singularities exists there.
pub fn conic_sides(inst: &ConicInstance) -> Result<(bool, bool), String> {
    let ring = affine_ring(FieldContext::Rationals);
    let system = full_system(&ring, 2);
    let mut mults: Vec<Vec<u32>> = inst.fixed.iter().map(|_| vec![1]).collect();
    mults.push(vec![2]);
    let spec = SingularitySpecSet {
        systems: vec![system.clone()],
        points: inst.fixed.iter().map(|&(a, b)| (fe(a), fe(b))).collect(),
        mults: vec![mults],
        tangents: vec![Vec::new(); 5],
        eq: Vec::new(),
        ne: Vec::new(),
        d: 0,
    };
    let r = param_ring(&spec).map_err(|e| e.to_string())?;
    let conds = system_conditions(&r, &spec).map_err(|e| e.to_string())?;
    let mut values = vec![FieldElement::zero(); r.nvars()];
    let xi = r
        .coord_var(4, 0, 0)
        .ok_or("no coordinate for the free point")?;
    let yi = r
        .coord_var(4, 0, 1)
        .ok_or("no coordinate for the free point")?;
    values[xi] = FieldElement::from_rational(inst.point.0.clone());
    values[yi] = FieldElement::from_rational(inst.point.1.clone());
    let minors_vanish = conds[0]
        .minors
        .iter()
        .all(|m| m.evaluate(&values).is_zero());
    let mut chains: Vec<PointChain> = inst
        .fixed
        .iter()
        .map(|&(a, b)| PointChain::new((fe(a), fe(b)), vec![1], vec![]))
        .collect();
    let p = (
        FieldElement::from_rational(inst.point.0.clone()),
        FieldElement::from_rational(inst.point.1.clone()),
    );
    chains.push(PointChain::new(p, vec![2], vec![]));
    let exists = !lin_sys(&system, &chains)
        .map_err(|e| e.to_string())?
        .is_empty();
    Ok((minors_vanish, exists))
}

pub fn random_ideal<R: Rng>(rng: &mut R) -> Vec<MPoly> {
    let order = if rng.gen_bool(0.5) {
        MonomialOrder::Grevlex
    } else {
        MonomialOrder::Lex
    };
    let ring = PolyRing::new(FieldContext::Rationals, ["x", "y", "z"], order).unwrap();
    let k = rng.gen_range(2..=3);
    (0..k)
        .map(|_| {
            let terms = rng.gen_range(2..=4);
            let f = random_poly(rng, &ring, 2, terms);
            if f.is_zero() {
                MPoly::var(&ring, 0)
            } else {
                f
            }
        })
        .collect()
}

/// Every S-polynomial of the computed basis reduces to zero, and so does
/// every generator.
pub fn check_groebner(gens: &[MPoly]) -> Result<Vec<MPoly>, String> {
    let gb = buchberger(gens, DEFAULT_MAX_STEPS).map_err(|e| e.to_string())?;
    let basis = gb.basis();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let r = normal_form(&s_polynomial(&basis[i], &basis[j]), basis);
            if !r.is_zero() {
                return Err(format!("S({}, {}) reduces to {r}", basis[i], basis[j]));
            }
        }
    }
    for g in gens {
        if !normal_form(g, basis).is_zero() {
            return Err(format!("generator {g} is not reduced to zero"));
        }
    }
    Ok(basis.to_vec())
}

pub fn random_binary_form<R: Rng>(rng: &mut R) -> MPoly {
    let ctx = if rng.gen_bool(0.3) {
        parse_minpoly("r^2 - 2").unwrap()
    } else {
        FieldContext::Rationals
    };
    let ring = PolyRing::new(ctx.clone(), ["x", "y"], MonomialOrder::Grevlex).unwrap();
    let k = rng.gen_range(0..=4u32);
    let mut s = MPoly::zero(&ring);
    for i in 0..=k {
        if rng.gen_bool(0.7) {
            let mut c = small_coeff(rng);
            if let Ok(r) = ctx.generator() {
                c = &c + &(&small_coeff(rng) * &r);
            }
            s = s.add(&MPoly::monomial(&ring, vec![i, k - i], c));
        }
    }
    if s.is_zero() {
        s = MPoly::var(&ring, 0).pow(k);
    }
    s
}

pub fn check_sqrt(s: &MPoly) -> Result<(), String> {
    let r = binary_form_sqrt(&s.mul(s)).map_err(|e| format!("sqrt of ({s})^2: {e}"))?;
    if &r != s && r != s.neg() {
        return Err(format!("sqrt of ({s})^2 gave {r}"));
    }
    Ok(())
}

// ---- resultants for the elimination check ----

fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for k in c..n {
                let t = &m[c][k] * &f;
                m[i][k] -= t;
            }
        }
    }
    d
}

/// Sylvester resultant of two univariate polynomials (coefficients low to
/// high), of formal degrees `len - 1`.
fn sylvester(f: &[Q], g: &[Q]) -> Q {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return Q::one();
    }
    let mut rows = Vec::new();
    for i in 0..n {
        let mut r = vec![Q::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Q::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    det(rows)
}

fn coeffs_in_x_at(f: &MPoly, y0: &Q, dx: usize) -> Vec<Q> {
    let mut c = vec![Q::zero(); dx + 1];
    for (e, v) in f.terms() {
        let mut t = rat(v);
        for _ in 0..e[1] {
            t *= y0.clone();
        }
        c[e[0] as usize] += t;
    }
    c
}

fn interpolate(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let n = xs.len();
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        let mut basis = vec![Q::one()];
        let mut denom = Q::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c.clone();
                next[k] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / &denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

/// Res_x(f, g) as a polynomial in y, by evaluation and interpolation.
pub fn resultant_in_y(f: &MPoly, g: &MPoly) -> Vec<Q> {
    let (dfx, dgx) = (
        f.degree_in(0).unwrap_or(0) as usize,
        g.degree_in(0).unwrap_or(0) as usize,
    );
    let (dfy, dgy) = (
        f.degree_in(1).unwrap_or(0) as usize,
        g.degree_in(1).unwrap_or(0) as usize,
    );
    let bound = dfx * dgy + dgx * dfy + 1;
    let xs: Vec<Q> = (0..bound as i64)
        .map(|i| q(i - (bound as i64) / 2))
        .collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|y0| sylvester(&coeffs_in_x_at(f, y0, dfx), &coeffs_in_x_at(g, y0, dgx)))
        .collect();
    interpolate(&xs, &ys)
}

/// Remainder of `a` modulo `b`, both low to high.
pub fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap() / &lead;
        let shift = r.len() - 1 - db;
        for (k, bk) in b.iter().enumerate() {
            let t = bk * &c;
            r[shift + k] -= t;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

/// The lex elimination polynomial in y (lex x > y) divides the resultant.
pub fn check_elimination(f: &MPoly, g: &MPoly) -> Result<(), String> {
    let res = resultant_in_y(f, g);
    let gb = buchberger(&[f.clone(), g.clone()], DEFAULT_MAX_STEPS).map_err(|e| e.to_string())?;
    let elim: Vec<&MPoly> = gb.basis().iter().filter(|p| !p.contains_var(0)).collect();
    let res_zero = res.iter().all(|c| c.is_zero());
    if elim.is_empty() {
        return if res_zero {
            Ok(())
        } else {
            Err(format!("no eliminant but resultant {res:?}"))
        };
    }
    if res_zero {
        return Ok(());
    }
    let h = elim[0];
    let mut hc = vec![Q::zero(); h.degree_in(1).unwrap_or(0) as usize + 1];
    for (e, v) in h.terms() {
        hc[e[1] as usize] = rat(v);
    }
    let r = poly_rem(&res, &hc);
    if r.iter().any(|c| !c.is_zero()) {
        return Err(format!("eliminant {h} does not divide the resultant"));
    }
    Ok(())
}

pub fn random_plane_pair<R: Rng>(rng: &mut R) -> (MPoly, MPoly) {
    let ring = PolyRing::new(FieldContext::Rationals, ["x", "y"], MonomialOrder::Lex).unwrap();
    let draw = |rng: &mut R| loop {
        let terms = rng.gen_range(2..=4);
        let f = random_poly(rng, &ring, 3, terms);
        if f.degree_in(0).unwrap_or(0) > 0 {
            break f;
        }
    };
    let f = draw(rng);
    let g = draw(rng);
    (f, g)
}
