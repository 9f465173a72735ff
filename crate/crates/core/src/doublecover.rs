//! Quartic double planes `a2*w^2 + b3*w + c4` and their branch sextics.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::mpoly::{same_ring, MPoly, MonomialOrder, PolyRing, Ring};

/// `x, y, z` with grevlex order.
pub fn plane_ring(ctx: FieldContext) -> Ring {
    PolyRing::new(ctx, ["x", "y", "z"], MonomialOrder::Grevlex).expect("distinct names")
}

/// `w, x, y, z`, ordered by `w`-degree first.
pub fn quartic_ring(ctx: FieldContext) -> Ring {
    PolyRing::new(ctx, ["w", "x", "y", "z"], MonomialOrder::Block(1)).expect("distinct names")
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuarticSurface {
    pub a2: MPoly,
    pub b3: MPoly,
    pub c4: MPoly,
    pub equation: MPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchCurve {
    pub sextic: MPoly,
    /// `sextic = scale * (b3^2 - 4*a2*c4)` for the quartic it came from or
    /// produces.
    pub scale: FieldElement,
}

fn check_form(f: &MPoly, degree: u32, what: &str) -> Result<()> {
    if !f.is_zero() && (!f.is_homogeneous() || f.total_degree() != Some(degree)) {
        return Err(Error::Invalid(format!(
            "{what} is not a form of degree {degree}"
        )));
    }
    Ok(())
}

impl QuarticSurface {
    /// From forms in [`plane_ring`].
    pub fn from_parts(a2: MPoly, b3: MPoly, c4: MPoly) -> Result<Self> {
        if a2.is_zero() {
            return Err(Error::Invalid("a2 vanishes".into()));
        }
        if !same_ring(a2.ring(), b3.ring()) || !same_ring(a2.ring(), c4.ring()) {
            return Err(Error::RingMismatch);
        }
        check_form(&a2, 2, "a2")?;
        check_form(&b3, 3, "b3")?;
        check_form(&c4, 4, "c4")?;
        let q = quartic_ring(a2.ring().ctx().clone());
        let lift = |f: &MPoly| f.map_vars(&q, &[1, 2, 3]);
        let w = MPoly::var(&q, 0);
        let equation = lift(&a2)
            .mul(&w.pow(2))
            .add(&lift(&b3).mul(&w))
            .add(&lift(&c4));
        Ok(QuarticSurface {
            a2,
            b3,
            c4,
            equation,
        })
    }

    /// Splits a quartic in `w, x, y, z` by powers of `w`.
    pub fn from_equation(eq: &MPoly) -> Result<Self> {
        let names = eq.ring().vars();
        if names != ["w", "x", "y", "z"] {
            return Err(Error::Invalid("quartic must live in w, x, y, z".into()));
        }
        if !eq.is_homogeneous() || eq.total_degree() != Some(4) {
            return Err(Error::Invalid("not a quartic form".into()));
        }
        if eq.degree_in(0).unwrap_or(0) != 2 {
            return Err(Error::Invalid("equation must have degree 2 in w".into()));
        }
        let plane = plane_ring(eq.ring().ctx().clone());
        let coeffs = eq.coeffs_in(0);
        let down = |f: &MPoly| {
            MPoly::from_terms(
                &plane,
                f.terms()
                    .iter()
                    .map(|(e, c)| (e[1..].to_vec(), c.clone()))
                    .collect::<Vec<_>>(),
            )
        };
        QuarticSurface::from_parts(down(&coeffs[2]), down(&coeffs[1]), down(&coeffs[0]))
    }
}

pub fn branch_sextic(x: &QuarticSurface) -> BranchCurve {
    let four = FieldElement::from_int(4);
    BranchCurve {
        sextic: x.b3.mul(&x.b3).sub(&x.a2.mul(&x.c4).scale(&four)),
        scale: FieldElement::one(),
    }
}

fn count_monomials(nvars: usize, degree: u32) -> usize {
    let mut c: u128 = 1;
    for i in 1..nvars as u128 {
        c = c * (degree as u128 + i) / i;
    }
    c.min(usize::MAX as u128) as usize
}

/// Square root of a homogeneous form, first coefficient made positive.
pub fn binary_form_sqrt(a: &MPoly) -> Result<MPoly> {
    if a.is_zero() {
        return Ok(a.clone());
    }
    if !a.is_homogeneous() {
        return Err(Error::Invalid("form expected".into()));
    }
    let d = a.total_degree().unwrap();
    if d % 2 == 1 {
        return Err(Error::NotAPerfectSquare);
    }
    let ring = a.ring().clone();
    let ctx = ring.ctx().clone();
    let (le, lc) = a.leading_term().unwrap();
    if le.iter().any(|e| e % 2 == 1) {
        return Err(Error::NotAPerfectSquare);
    }
    let root_c = lc.sqrt(&ctx).ok_or(Error::NotAPerfectSquare)?;
    let half: Vec<u32> = le.iter().map(|e| e / 2).collect();
    let lead = MPoly::monomial(&ring, half.clone(), root_c.clone());
    let two_lead_inv = (&root_c * &FieldElement::from_int(2)).inv();
    let mut s = lead;
    let mut rem = a.sub(&s.mul(&s));
    let limit = count_monomials(ring.nvars(), d / 2);
    let mut steps = 0;
    while !rem.is_zero() {
        steps += 1;
        if steps > limit {
            return Err(Error::NotAPerfectSquare);
        }
        let (re, rc) = rem.leading_term().unwrap();
        if re.iter().zip(&half).any(|(r, h)| r < h) {
            return Err(Error::NotAPerfectSquare);
        }
        let e: Vec<u32> = re.iter().zip(&half).map(|(r, h)| r - h).collect();
        let t = MPoly::monomial(&ring, e, rc * &two_lead_inv);
        // (s + t)^2 - s^2 = 2st + t^2
        rem = rem.sub(&s.mul(&t).scale(&FieldElement::from_int(2)).add(&t.mul(&t)));
        s = s.add(&t);
    }
    if s.leading_coeff().leading_sign_negative() {
        s = s.neg();
    }
    Ok(s)
}

/// Quartic with `a2 = l^2` (`l` the plane variable `line`) whose branch
/// sextic is the given one up to its leading scalar on `l = 0`.
pub fn assemble_quartic(b: &BranchCurve, line: usize) -> Result<(QuarticSurface, BranchCurve)> {
    let f = &b.sextic;
    let ring = f.ring().clone();
    if ring.nvars() != 3 || line >= 3 {
        return Err(Error::Invalid("sextic must live in x, y, z".into()));
    }
    check_form(f, 6, "branch curve")?;
    let parts = f.coeffs_in(line);
    let a = parts.first().cloned().unwrap_or_else(|| MPoly::zero(&ring));
    if a.is_zero() {
        return Err(Error::NotAPerfectSquare);
    }
    let lambda = a.leading_coeff();
    let inv = lambda.inv();
    let g = f.scale(&inv);
    let s = binary_form_sqrt(&a.scale(&inv))?;
    let b1 = parts
        .get(1)
        .cloned()
        .unwrap_or_else(|| MPoly::zero(&ring))
        .scale(&inv);
    let half = FieldElement::from_ratio(1, 2);
    let t = b1
        .exact_divide(&s)
        .map_err(|_| Error::TangencyFailure)?
        .scale(&half);
    let l = MPoly::var(&ring, line);
    let b3 = s.add(&l.mul(&t));
    let l2 = l.mul(&l);
    let c4 = b3
        .mul(&b3)
        .sub(&g)
        .exact_divide(&l2.scale(&FieldElement::from_int(4)))
        .map_err(|_| Error::TangencyFailure)?;
    let x = QuarticSurface::from_parts(l2, b3, c4)?;
    let curve = BranchCurve {
        sextic: f.clone(),
        scale: lambda,
    };
    Ok((x, curve))
}

/// Representative of the quartic modulo `w -> ±w + (linear form)`: the part
/// of `b3` divisible by `l^2` is removed and `b3` gets a positive leading
/// coefficient. Requires `a2 = l^2`.
pub fn canonical_gauge(x: &QuarticSurface, line: usize) -> Result<QuarticSurface> {
    let ring = x.a2.ring().clone();
    let l = MPoly::var(&ring, line);
    let l2 = l.mul(&l);
    if x.a2 != l2 {
        return Err(Error::Invalid(
            "a2 is not the square of the line coordinate".into(),
        ));
    }
    let parts = x.b3.coeffs_in(line);
    let low = parts
        .iter()
        .take(2)
        .enumerate()
        .fold(MPoly::zero(&ring), |acc, (k, p)| {
            acc.add(&p.mul(&l.pow(k as u32)))
        });
    let big_l = x.b3.sub(&low).exact_divide(&l2)?;
    let quarter = FieldElement::from_ratio(1, 4);
    let half = FieldElement::from_ratio(1, 2);
    let mut b3 = low;
    let mut c4 =
        x.c4.add(&l2.mul(&big_l.mul(&big_l)).scale(&quarter))
            .sub(&x.b3.mul(&big_l).scale(&half));
    if b3.leading_coeff().leading_sign_negative() {
        b3 = b3.neg();
    }
    // w -> -w leaves c4 unchanged
    c4 = c4.add(&MPoly::zero(&ring));
    QuarticSurface::from_parts(l2, b3, c4)
}

/// Whether two double-line quartics agree up to `w -> ±w + (linear form)`.
pub fn gauge_equivalent(x: &QuarticSurface, y: &QuarticSurface, line: usize) -> Result<bool> {
    Ok(canonical_gauge(x, line)? == canonical_gauge(y, line)?)
}
