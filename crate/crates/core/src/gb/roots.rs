//! Roots of univariate polynomials over Q and quadratic extensions.
//!
//! Rational roots come from a p-adic lift of the roots modulo a prime,
//! followed by rational reconstruction and an exact check. Quadratic
//! factors over Q are located numerically and confirmed by exact division;
//! anything left over is reported as a residual factor.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::UPoly;
use crate::field::{make_extension, rational_sqrt, FieldContext, FieldElement, Rational};

#[derive(Clone, Debug, Default)]
pub struct Roots {
    /// Each root with the field it lives in.
    pub found: Vec<(FieldElement, FieldContext)>,
    /// Monic factors without roots in any field reachable from the base by
    /// at most one quadratic extension.
    pub residual: Vec<UPoly>,
}

/// All roots of `f` over `ctx`; over Q, irreducible quadratic factors are
/// split in a fresh quadratic extension.
pub fn roots(f: &UPoly, ctx: &FieldContext) -> Roots {
    let mut out = Roots::default();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let g = f.squarefree();
    match ctx {
        FieldContext::Rationals => roots_over_q(&g, &mut out),
        FieldContext::Quadratic(_) => roots_over_ext(&g, ctx, &mut out),
    }
    out
}

fn rational_coeffs(f: &UPoly) -> Vec<Rational> {
    f.0.iter()
        .map(|c| c.as_rational().expect("rational coefficient").clone())
        .collect()
}

fn roots_over_q(g: &UPoly, out: &mut Roots) {
    let mut rest = g.clone();
    for r in rational_roots(&rational_coeffs(g)) {
        let e = FieldElement::from_rational(r);
        rest = rest.div_rem(&UPoly::linear(&e)).0;
        out.found.push((e, FieldContext::Rationals));
    }
    let (quads, left) = quadratic_factors(&rest);
    for q in quads {
        let c = rational_coeffs(&q);
        let ctx = make_extension(c[1].clone(), c[0].clone()).expect("no rational roots left");
        let r = ctx.generator().expect("extension");
        let other = &(-&r) - &FieldElement::from_rational(c[1].clone());
        out.found.push((r, ctx.clone()));
        out.found.push((other, ctx));
    }
    if left.degree().unwrap_or(0) > 0 {
        out.residual.push(left.monic());
    }
}

/// Roots in `ext` of a monic quadratic with rational coefficients.
fn split_quadratic_in(q: &[Rational], ctx: &FieldContext) -> Option<[FieldElement; 2]> {
    let disc = &q[1] * &q[1] - Rational::from_integer(4.into()) * &q[0];
    let s = FieldElement::from_rational(disc).sqrt(ctx)?;
    let half = FieldElement::from_ratio(1, 2);
    let b = FieldElement::from_rational(q[1].clone());
    Some([&(&(-&b) + &s) * &half, &(&(-&b) - &s) * &half])
}

fn roots_over_ext(g: &UPoly, ctx: &FieldContext, out: &mut Roots) {
    let norm = if g.is_rational() {
        g.clone()
    } else {
        let conj = UPoly::new(g.0.iter().map(|c| c.conjugate()).collect());
        g.mul(&conj).squarefree()
    };
    let mut candidates: Vec<FieldElement> = Vec::new();
    let mut rest = norm.clone();
    for r in rational_roots(&rational_coeffs(&norm)) {
        let e = FieldElement::from_rational(r);
        rest = rest.div_rem(&UPoly::linear(&e)).0;
        candidates.push(e);
    }
    let (quads, _) = quadratic_factors(&rest);
    for q in quads {
        if let Some(rs) = split_quadratic_in(&rational_coeffs(&q), ctx) {
            candidates.extend(rs);
        }
    }
    let mut left = g.clone();
    for c in candidates {
        if g.eval(&c).is_zero() {
            left = left.div_rem(&UPoly::linear(&c)).0;
            out.found.push((c, ctx.clone()));
        }
    }
    if left.degree().unwrap_or(0) > 0 {
        out.residual.push(left.monic());
    }
}

/// Integer primitive polynomial with the same roots.
fn integer_poly(c: &[Rational]) -> Vec<BigInt> {
    let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = c
        .iter()
        .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &content).collect()
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_u64(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn eval_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0u64, |acc, &a| (acc * x + a) % p)
}

fn poly_mod_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let dy = y.len() - 1;
        let il = inv(y[dy], p);
        while x.len() > dy {
            let k = x.len() - 1 - dy;
            let c = x[x.len() - 1] * il % p;
            for (j, &yj) in y.iter().enumerate() {
                x[k + j] = (x[k + j] + p - c * yj % p) % p;
            }
            trim(&mut x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

fn eval_big(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter()
        .rev()
        .fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(m))
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// `a/b` with `a = r*b mod m`, `|a|, b <= sqrt(m/2)`.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Distinct rational roots of a squarefree rational polynomial.
pub fn rational_roots(c: &[Rational]) -> Vec<Rational> {
    let mut p = integer_poly(c);
    let mut out = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        if out.is_empty() {
            out.push(Rational::zero());
        }
    }
    if p.len() <= 1 {
        return out;
    }
    let deriv: Vec<BigInt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| v * BigInt::from(i))
        .collect();
    let lead = p.last().unwrap().clone();
    let mut prime = 10007u64;
    loop {
        if is_prime(prime) && !(&lead % BigInt::from(prime)).is_zero() {
            let pm: Vec<u64> = p.iter().map(|v| mod_u64(v, prime)).collect();
            let dm: Vec<u64> = deriv.iter().map(|v| mod_u64(v, prime)).collect();
            if poly_mod_gcd_is_one(&pm, &dm, prime) {
                break;
            }
        }
        prime += 2;
    }
    let pm: Vec<u64> = p.iter().map(|v| mod_u64(v, prime)).collect();
    let bound = p[0].abs().max(BigInt::one()) * lead.abs() * BigInt::from(2);
    let pb = BigInt::from(prime);
    for r0 in 0..prime {
        if eval_mod(&pm, r0, prime) != 0 {
            continue;
        }
        let mut r = BigInt::from(r0);
        let mut m = pb.clone();
        while m <= &bound * &bound * BigInt::from(2) {
            m = &m * &m;
            let fv = eval_big(&p, &r, &m);
            let dv = eval_big(&deriv, &r, &m);
            let Some(inv) = inverse_mod(&dv, &m) else {
                break;
            };
            r = (&r - fv * inv).mod_floor(&m);
        }
        for cand in [
            rational_reconstruct(&r, &m),
            rational_reconstruct(&(&r - &m), &m),
        ]
        .into_iter()
        .flatten()
        {
            let v = p.iter().rev().fold(Rational::zero(), |acc, a| {
                acc * &cand + Rational::from_integer(a.clone())
            });
            if v.is_zero() && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out.sort();
    out
}

fn numeric_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let a: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v / lead, 0.0)).collect();
    let radius = 1.0 + a[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64,
            )
        })
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for coef in a.iter().rev() {
            d = d * x + v;
            v = v * x + coef;
        }
        (v, d)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Rational quadratic factors of a polynomial without rational roots, and
/// the cofactor that remains.
pub fn quadratic_factors(h: &UPoly) -> (Vec<UPoly>, UPoly) {
    let mut rest = h.monic();
    let mut found = Vec::new();
    loop {
        let deg = rest.degree().unwrap_or(0);
        if deg < 2 || deg == 3 {
            return (found, rest);
        }
        if deg == 2 {
            found.push(rest.clone());
            return (found, UPoly(vec![FieldElement::one()]));
        }
        let c = rational_coeffs(&rest);
        let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let cf: Vec<f64> = c.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect();
        if cf.iter().any(|v| !v.is_finite()) {
            return (found, rest);
        }
        let z = numeric_roots(&cf);
        let mut hit = None;
        'pairs: for i in 0..z.len() {
            for j in i + 1..z.len() {
                let s = z[i] + z[j];
                let p = z[i] * z[j];
                let scale = 1.0 + s.norm() + p.norm();
                if s.im.abs() > 1e-6 * scale || p.im.abs() > 1e-6 * scale {
                    continue;
                }
                // with x = y/den the factor y^2 + B*y + C has integer B, C
                let d = den.to_f64().unwrap_or(f64::INFINITY);
                let bb = (-s.re * d).round();
                let cc = (p.re * d * d).round();
                if !bb.is_finite() || !cc.is_finite() || bb.abs() > 9e15 || cc.abs() > 9e15 {
                    continue;
                }
                let d2 = Rational::from_integer(&den * &den);
                let q = UPoly(vec![
                    FieldElement::from_rational(
                        Rational::from_integer(BigInt::from(cc as i64)) / d2,
                    ),
                    FieldElement::from_rational(
                        Rational::from_integer(BigInt::from(bb as i64))
                            / Rational::from_integer(den.clone()),
                    ),
                    FieldElement::one(),
                ]);
                let (quo, rem) = rest.div_rem(&q);
                if rem.is_zero() {
                    hit = Some((q, quo));
                    break 'pairs;
                }
            }
        }
        match hit {
            Some((q, quo)) => {
                found.push(q);
                rest = quo.monic();
            }
            None => return (found, rest),
        }
    }
}

/// Whether a rational is a square (used to decide splitting in an
/// extension).
pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}
