//! Exact scalars: rationals and elements `a + b*r` of a quadratic extension
//! `Q(r)` with `r^2 + c1*r + c0 = 0`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Minimal polynomial `r^2 + c1*r + c0` of the extension generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticExt {
    pub c1: Rational,
    pub c0: Rational,
}

impl QuadraticExt {
    /// `c1^2 - 4*c0`; `Q(r) = Q(sqrt(disc))`.
    pub fn discriminant(&self) -> Rational {
        &self.c1 * &self.c1 - Rational::from_integer(4.into()) * &self.c0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldContext {
    Rationals,
    Quadratic(Arc<QuadraticExt>),
}

impl Default for FieldContext {
    fn default() -> Self {
        FieldContext::Rationals
    }
}

/// Builds `Q(r)` with `r^2 + c1*r + c0 = 0`. Reducible minimal polynomials are
/// rejected since the quotient would not be a field.
pub fn make_extension(c1: Rational, c0: Rational) -> Result<FieldContext> {
    let ext = QuadraticExt { c1, c0 };
    if rational_sqrt(&ext.discriminant()).is_some() {
        return Err(Error::ReducibleMinpoly(format!(
            "r^2 + ({})*r + ({})",
            fmt_rational(&ext.c1),
            fmt_rational(&ext.c0)
        )));
    }
    Ok(FieldContext::Quadratic(Arc::new(ext)))
}

impl FieldContext {
    pub fn is_rational(&self) -> bool {
        matches!(self, FieldContext::Rationals)
    }

    pub fn ext(&self) -> Option<&Arc<QuadraticExt>> {
        match self {
            FieldContext::Rationals => None,
            FieldContext::Quadratic(e) => Some(e),
        }
    }

    /// The generator `r`; errors over `Q`.
    pub fn generator(&self) -> Result<FieldElement> {
        match self {
            FieldContext::Rationals => Err(Error::Parse("no extension generator over Q".into())),
            FieldContext::Quadratic(e) => Ok(FieldElement::Quadratic {
                a: Rational::zero(),
                b: Rational::one(),
                ext: e.clone(),
            }),
        }
    }

    /// Whether elements of `self` can be combined with elements of `other`.
    pub fn compatible(&self, other: &FieldContext) -> bool {
        self == other
    }

    /// Header line used in text documents, e.g. `r^2 - 33/73*r + 9/292 = 0`.
    pub fn minpoly_text(&self) -> Option<String> {
        self.ext().map(|e| {
            let mut s = String::from("r^2");
            for (c, mono) in [(&e.c1, "*r"), (&e.c0, "")] {
                if c.is_zero() {
                    continue;
                }
                let sign = if c.is_negative() { " - " } else { " + " };
                let abs = c.abs();
                if mono.is_empty() {
                    s.push_str(&format!("{sign}{}", fmt_rational(&abs)));
                } else if abs.is_one() {
                    s.push_str(&format!("{sign}r"));
                } else {
                    s.push_str(&format!("{sign}{}{mono}", fmt_rational(&abs)));
                }
            }
            s.push_str(" = 0");
            s
        })
    }
}

/// Element of `Q` or of a quadratic extension. Elements with zero `r`-part are
/// always stored as `Rational`, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(Rational),
    Quadratic {
        a: Rational,
        b: Rational,
        ext: Arc<QuadraticExt>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic entry point.
pub fn field_arith(x: &FieldElement, y: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    if let (Some(e1), Some(e2)) = (x.ext(), y.ext()) {
        if e1 != e2 {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(match op {
        FieldOp::Add => x + y,
        FieldOp::Sub => x - y,
        FieldOp::Mul => x * y,
        FieldOp::Div => {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            x / y
        }
    })
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::Rational(Rational::new(n.into(), d.into()))
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElement::Rational(q)
    }

    /// `a + b*r` in the given context, normalized.
    pub fn new(a: Rational, b: Rational, ctx: &FieldContext) -> Self {
        match ctx {
            FieldContext::Rationals => {
                assert!(b.is_zero(), "r-part over Q");
                FieldElement::Rational(a)
            }
            FieldContext::Quadratic(ext) => Self::normalized(a, b, ext),
        }
    }

    fn normalized(a: Rational, b: Rational, ext: &Arc<QuadraticExt>) -> Self {
        if b.is_zero() {
            FieldElement::Rational(a)
        } else {
            FieldElement::Quadratic {
                a,
                b,
                ext: ext.clone(),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rational(q) if q.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldElement::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn ext(&self) -> Option<&Arc<QuadraticExt>> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Quadratic { ext, .. } => Some(ext),
        }
    }

    /// Rational and `r` parts.
    pub fn parts(&self) -> (Rational, Rational) {
        match self {
            FieldElement::Rational(q) => (q.clone(), Rational::zero()),
            FieldElement::Quadratic { a, b, .. } => (a.clone(), b.clone()),
        }
    }

    /// Image under `r -> -c1 - r`.
    pub fn conjugate(&self) -> Self {
        match self {
            FieldElement::Rational(_) => self.clone(),
            FieldElement::Quadratic { a, b, ext } => {
                Self::normalized(a - &ext.c1 * b, -b.clone(), ext)
            }
        }
    }

    /// `x * conj(x)`, a rational.
    pub fn norm(&self) -> Rational {
        match self {
            FieldElement::Rational(q) => q * q,
            FieldElement::Quadratic { a, b, ext } => a * a - &ext.c1 * a * b + &ext.c0 * b * b,
        }
    }

    pub fn trace(&self) -> Rational {
        match self {
            FieldElement::Rational(q) => q * Rational::from_integer(2.into()),
            FieldElement::Quadratic { a, b, ext } => {
                a * Rational::from_integer(2.into()) - &ext.c1 * b
            }
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            FieldElement::Rational(q) => {
                assert!(!q.is_zero(), "division by zero");
                FieldElement::Rational(q.recip())
            }
            FieldElement::Quadratic { .. } => {
                let n = self.norm();
                let (ca, cb) = self.conjugate().parts();
                let ext = self.ext().unwrap();
                Self::normalized(ca / &n, cb / &n, ext)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of the leading nonzero part (`r`-part first), used for normalization.
    pub fn leading_sign_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Quadratic { b, .. } => b.is_negative(),
        }
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        match self {
            FieldElement::Rational(q) => q.denom().clone(),
            FieldElement::Quadratic { a, b, .. } => a.denom().lcm(b.denom()),
        }
    }

    /// Square root inside the element's field, if one exists.
    pub fn sqrt(&self, ctx: &FieldContext) -> Option<FieldElement> {
        if let Some(q) = self.as_rational() {
            if let Some(s) = rational_sqrt(q) {
                return Some(FieldElement::Rational(s));
            }
        }
        let ext = ctx.ext()?;
        // with w = sqrt(disc) = 2r + c1, write self = p + q*w and solve
        // (u + v*w)^2 = p + q*w
        let (a, b) = self.parts();
        let disc = ext.discriminant();
        let two = Rational::from_integer(2.into());
        let q = &b / &two;
        let p = &a - &q * &ext.c1;
        let from_uv = |u: Rational, v: Rational| Self::normalized(&u + &v * &ext.c1, v * &two, ext);
        if q.is_zero() {
            let v = rational_sqrt(&(&p / &disc))?;
            return Some(from_uv(Rational::zero(), v));
        }
        let n = rational_sqrt(&(&p * &p - &disc * &q * &q))?;
        for u2 in [(&p + &n) / &two, (&p - &n) / &two] {
            if let Some(u) = rational_sqrt(&u2) {
                if !u.is_zero() {
                    let v = &q / (&u * &two);
                    return Some(from_uv(u, v));
                }
            }
        }
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn ext_of<'a>(x: &'a FieldElement, y: &'a FieldElement) -> Option<&'a Arc<QuadraticExt>> {
    match (x.ext(), y.ext()) {
        (Some(e1), Some(e2)) => {
            assert!(e1 == e2 || Arc::ptr_eq(e1, e2), "field context mismatch");
            Some(e1)
        }
        (Some(e), None) | (None, Some(e)) => Some(e),
        (None, None) => None,
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        if let (FieldElement::Rational(p), FieldElement::Rational(q)) = (self, rhs) {
            return FieldElement::Rational(p + q);
        }
        let ext = ext_of(self, rhs).unwrap();
        let (a1, b1) = self.parts();
        let (a2, b2) = rhs.parts();
        FieldElement::normalized(a1 + a2, b1 + b2, ext)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        if let (FieldElement::Rational(p), FieldElement::Rational(q)) = (self, rhs) {
            return FieldElement::Rational(p - q);
        }
        let ext = ext_of(self, rhs).unwrap();
        let (a1, b1) = self.parts();
        let (a2, b2) = rhs.parts();
        FieldElement::normalized(a1 - a2, b1 - b2, ext)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(p), FieldElement::Rational(q)) => FieldElement::Rational(p * q),
            (FieldElement::Rational(p), FieldElement::Quadratic { a, b, ext })
            | (FieldElement::Quadratic { a, b, ext }, FieldElement::Rational(p)) => {
                if p.is_zero() {
                    FieldElement::zero()
                } else {
                    FieldElement::normalized(p * a, p * b, ext)
                }
            }
            (
                FieldElement::Quadratic { a: a1, b: b1, ext },
                FieldElement::Quadratic { a: a2, b: b2, .. },
            ) => {
                let _ = ext_of(self, rhs);
                let bb = b1 * b2;
                let a = a1 * a2 - &ext.c0 * &bb;
                let b = a1 * b2 + a2 * b1 - &ext.c1 * &bb;
                FieldElement::normalized(a, b, ext)
            }
        }
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        if let (FieldElement::Rational(p), FieldElement::Rational(q)) = (self, rhs) {
            assert!(!q.is_zero(), "division by zero");
            return FieldElement::Rational(p / q);
        }
        self * &rhs.inv()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q.clone()),
            FieldElement::Quadratic { a, b, ext } => FieldElement::Quadratic {
                a: -a.clone(),
                b: -b.clone(),
                ext: ext.clone(),
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        FieldElement::Rational(q)
    }
}

impl fmt::Display for FieldElement {
    /// `a + b*r` form; `p/q` or `p` for rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{}", fmt_rational(q)),
            FieldElement::Quadratic { a, b, .. } => {
                let bs = if b.abs().is_one() {
                    "r".to_string()
                } else {
                    format!("{}*r", fmt_rational(&b.abs()))
                };
                if a.is_zero() {
                    if b.is_negative() {
                        write!(f, "-{bs}")
                    } else {
                        write!(f, "{bs}")
                    }
                } else {
                    let sign = if b.is_negative() { "-" } else { "+" };
                    write!(f, "{} {sign} {bs}", fmt_rational(a))
                }
            }
        }
    }
}

/// Parses `p/q`, `p`, or `a + b*r` style text via the polynomial parser.
pub fn parse_element(text: &str, ctx: &FieldContext) -> Result<FieldElement> {
    let ring = crate::mpoly::PolyRing::new(ctx.clone(), Vec::<String>::new(), Default::default())?;
    let p = crate::mpoly::parse_poly(&ring, text)?;
    if p.is_zero() {
        return Ok(FieldElement::zero());
    }
    p.constant_value()
        .ok_or_else(|| Error::Parse(format!("not a scalar: {text}")))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let q = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {t}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {t}")))?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            body.parse()
                .map_err(|_| Error::Parse(format!("bad rational {t}")))?,
        ),
    };
    Ok(if neg { -q } else { q })
}

/// Field from a minimal polynomial text in `r`, e.g. `r^2 - 33/73*r + 9/292`
/// (an optional trailing `= 0` is accepted), or `Q` for the rationals.
pub fn parse_minpoly(text: &str) -> Result<FieldContext> {
    let body = text.split('=').next().unwrap_or("").trim();
    if matches!(body, "Q" | "QQ") {
        return Ok(FieldContext::Rationals);
    }
    let ring = crate::mpoly::PolyRing::new(FieldContext::Rationals, ["r"], Default::default())?;
    let p = crate::mpoly::parse_poly(&ring, body)?;
    if p.degree_in(0) != Some(2) {
        return Err(Error::Parse(format!(
            "minimal polynomial must be quadratic: {text}"
        )));
    }
    let p = p.monic();
    let c = |k: u32| {
        p.coeff(&[k])
            .as_rational()
            .cloned()
            .unwrap_or_else(Rational::zero)
    };
    make_extension(c(1), c(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn quartic_ctx() -> FieldContext {
        make_extension(q(-33, 73), q(9, 292)).unwrap()
    }

    fn elem(ctx: &FieldContext, a: (i64, i64), b: (i64, i64)) -> FieldElement {
        FieldElement::new(q(a.0, a.1), q(b.0, b.1), ctx)
    }

    #[test]
    fn rational_sum() {
        let s = &FieldElement::from_ratio(1, 2) + &FieldElement::from_ratio(1, 3);
        assert_eq!(s, FieldElement::from_ratio(5, 6));
    }

    #[test]
    fn generator_squared_reduces_by_minpoly() {
        let ctx = quartic_ctx();
        let r = ctx.generator().unwrap();
        assert_eq!(&r * &r, elem(&ctx, (-9, 292), (33, 73)));
    }

    #[test]
    fn multiplicative_identity() {
        let ctx = quartic_ctx();
        let x = elem(&ctx, (3, 7), (-5, 2));
        assert_eq!(&x * &FieldElement::one(), x);
    }

    #[test]
    fn sqrt_two_and_gaussian() {
        let c = make_extension(q(0, 1), q(-2, 1)).unwrap();
        let r = c.generator().unwrap();
        assert_eq!(&r * &r, FieldElement::from_int(2));
        let i = make_extension(q(0, 1), q(1, 1))
            .unwrap()
            .generator()
            .unwrap();
        assert_eq!(i.pow(4), FieldElement::one());
        assert_eq!(i.pow(2), FieldElement::from_int(-1));
    }

    #[test]
    fn reducible_minpoly_rejected() {
        assert!(matches!(
            make_extension(q(0, 1), q(-4, 1)),
            Err(Error::ReducibleMinpoly(_))
        ));
    }

    #[test]
    fn checked_errors() {
        let a = FieldElement::one();
        assert!(matches!(
            field_arith(&a, &FieldElement::zero(), FieldOp::Div),
            Err(Error::DivisionByZero)
        ));
        let r1 = make_extension(q(0, 1), q(-2, 1))
            .unwrap()
            .generator()
            .unwrap();
        let r2 = make_extension(q(0, 1), q(-3, 1))
            .unwrap()
            .generator()
            .unwrap();
        assert!(matches!(
            field_arith(&r1, &r2, FieldOp::Add),
            Err(Error::ContextMismatch)
        ));
        // rationals embed in every extension
        assert!(field_arith(&a, &r1, FieldOp::Mul).is_ok());
    }

    #[test]
    fn display_and_parse() {
        let ctx = quartic_ctx();
        let x = elem(&ctx, (207, 256), (-73, 64));
        assert_eq!(x.to_string(), "207/256 - 73/64*r");
        assert_eq!(parse_element(&x.to_string(), &ctx).unwrap(), x);
        assert_eq!(parse_rational("-12/8").unwrap(), q(-3, 2));
        assert_eq!(
            quartic_ctx().minpoly_text().unwrap(),
            "r^2 - 33/73*r + 9/292 = 0"
        );
    }

    #[test]
    fn sqrt_in_extension() {
        let ctx = make_extension(q(0, 1), q(-2, 1)).unwrap();
        let s = FieldElement::from_int(18).sqrt(&ctx).unwrap();
        assert_eq!(&s * &s, FieldElement::from_int(18));
        assert!(FieldElement::from_int(3).sqrt(&ctx).is_none());
    }

    proptest! {
        #[test]
        fn sqrt_of_squares(x in arb_elem()) {
            let ctx = quartic_ctx();
            let x = elem(&ctx, (x.0, x.1), (x.2, x.3));
            let s = (&x * &x).sqrt(&ctx).unwrap();
            prop_assert!(s == x || s == -&x);
        }
    }

    fn arb_elem() -> impl Strategy<Value = (i64, i64, i64, i64)> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn field_axioms(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            let ctx = quartic_ctx();
            let x = elem(&ctx, (x.0, x.1), (x.2, x.3));
            let y = elem(&ctx, (y.0, y.1), (y.2, y.3));
            let z = elem(&ctx, (z.0, z.1), (z.2, z.3));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv(), FieldElement::one());
                prop_assert_eq!(&(&y / &x) * &x, y.clone());
            }
        }

        #[test]
        fn norm_is_multiplicative(x in arb_elem(), y in arb_elem()) {
            let ctx = quartic_ctx();
            let x = elem(&ctx, (x.0, x.1), (x.2, x.3));
            let y = elem(&ctx, (y.0, y.1), (y.2, y.3));
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            // the norm agrees with the product by the conjugate
            prop_assert_eq!(&x * &x.conjugate(), FieldElement::Rational(x.norm()));
        }

        #[test]
        fn normalization_is_idempotent(x in arb_elem()) {
            let ctx = quartic_ctx();
            let e = elem(&ctx, (x.0, x.1), (x.2, x.3));
            let (a, b) = e.parts();
            prop_assert_eq!(FieldElement::new(a, b, &ctx), e);
        }
    }
}
