//! Multivariate gcd by recursive primitive pseudo-remainder sequences, one
//! variable at a time. Results are monic.

use super::MPoly;

pub fn gcd_many(polys: &[MPoly]) -> MPoly {
    let mut it = polys.iter();
    let mut g = match it.next() {
        Some(p) => p.monic(),
        None => panic!("gcd of empty list"),
    };
    for p in it {
        if g.is_one() {
            break;
        }
        g = gcd(&g, p);
    }
    g
}

pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one(f.ring());
    }
    let n = f.ring().nvars();
    let v = (0..n)
        .find(|&i| f.contains_var(i) || g.contains_var(i))
        .expect("nonconstant polynomial has a variable");
    if !f.contains_var(v) {
        return gcd(f, &content(g, v));
    }
    if !g.contains_var(v) {
        return gcd(&content(f, v), g);
    }
    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd(&cf, &cg);
    let pf = f.exact_divide(&cf).expect("content divides");
    let pg = g.exact_divide(&cg).expect("content divides");
    let (mut a, mut b) = if pf.degree_in(v) >= pg.degree_in(v) {
        (pf, pg)
    } else {
        (pg, pf)
    };
    while !b.is_zero() {
        let r = prem(&a, &b, v);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            primitive_part(&r, v)
        };
    }
    c.mul(&primitive_part(&a, v)).monic()
}

/// Gcd of the coefficients with respect to `v`.
pub(crate) fn content(f: &MPoly, v: usize) -> MPoly {
    let coeffs: Vec<MPoly> = f
        .coeffs_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    if coeffs.is_empty() {
        return MPoly::zero(f.ring());
    }
    // start from the smallest coefficient to reach 1 early
    let mut order: Vec<usize> = (0..coeffs.len()).collect();
    order.sort_by_key(|&i| coeffs[i].len());
    let sorted: Vec<MPoly> = order.into_iter().map(|i| coeffs[i].clone()).collect();
    gcd_many(&sorted)
}

pub(crate) fn primitive_part(f: &MPoly, v: usize) -> MPoly {
    let c = content(f, v);
    f.exact_divide(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn prem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v).unwrap_or(0);
    let bc = b.coeffs_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    let mut e = a.degree_in(v).unwrap_or(0) as i64 - db as i64 + 1;
    let ring = a.ring().clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = r.coeffs_in(v)[dr as usize].clone();
        let mut shift = vec![0; ring.nvars()];
        shift[v] = dr - db;
        let t = b
            .mul(&lr)
            .mul_term(&shift, &crate::field::FieldElement::one());
        r = r.mul(&lb).sub(&t);
        e -= 1;
    }
    if e > 0 {
        r = r.mul(&lb.pow(e as u32));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::mpoly::{parse_poly, MonomialOrder, PolyRing};

    #[test]
    fn gcd_of_products() {
        let r = PolyRing::new(
            FieldContext::Rationals,
            ["x", "y", "z"],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let a = parse_poly(&r, "x^2*y - z^3 + 2").unwrap();
        let b = parse_poly(&r, "x - y*z").unwrap();
        let c = parse_poly(&r, "y^2 + x*z - 1").unwrap();
        let g = gcd(&a.mul(&b), &a.mul(&c).mul(&c));
        assert_eq!(g, a.monic());
        assert!(gcd(&b, &c).is_one());
    }
}
