//! Sparse multivariate polynomials over a [`FieldContext`].
//!
//! Terms are stored sorted in descending ring order with no zero
//! coefficients, so two equal polynomials over the same ring have identical
//! representations.

mod gcd;
mod text;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

pub use gcd::{gcd, gcd_many};
pub use text::parse_poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    Block(usize),
}

pub type Exponents = Vec<u32>;

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex_cmp(a, b),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.len());
                grevlex_cmp(&a[..k], &b[..k]).then_with(|| grevlex_cmp(&a[k..], &b[k..]))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    ctx: FieldContext,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: Into<String>>(
        ctx: FieldContext,
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
            if !ctx.is_rational() && v == "r" {
                return Err(Error::DuplicateVariable("r (extension generator)".into()));
            }
        }
        Ok(Arc::new(PolyRing { ctx, vars, order }))
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing {
            ctx: self.ctx.clone(),
            vars: self.vars.clone(),
            order,
        })
    }

    pub fn with_ctx(&self, ctx: FieldContext) -> Ring {
        Arc::new(PolyRing {
            ctx,
            vars: self.vars.clone(),
            order: self.order,
        })
    }

    pub fn with_vars<S: Into<String>>(&self, vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        PolyRing::new(self.ctx.clone(), vars, self.order)
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct MPoly {
    ring: Ring,
    terms: Vec<(Exponents, FieldElement)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl std::hash::Hash for MPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic.
pub fn poly_arith(f: &MPoly, g: &MPoly, op: PolyOp) -> Result<MPoly> {
    if !same_ring(&f.ring, &g.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Sub => f.sub(g),
        PolyOp::Mul => f.mul(g),
    })
}

impl MPoly {
    pub fn zero(ring: &Ring) -> Self {
        MPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        MPoly {
            ring: ring.clone(),
            terms: vec![(vec![0; ring.nvars()], c)],
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, FieldElement::one())
    }

    pub fn from_int(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, FieldElement::from_int(n))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        MPoly {
            ring: ring.clone(),
            terms: vec![(e, FieldElement::one())],
        }
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    pub fn monomial(ring: &Ring, exps: Exponents, c: FieldElement) -> Self {
        assert_eq!(exps.len(), ring.nvars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        MPoly {
            ring: ring.clone(),
            terms: vec![(exps, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(
        ring: &Ring,
        terms: impl IntoIterator<Item = (Exponents, FieldElement)>,
    ) -> Self {
        let mut acc: HashMap<Exponents, FieldElement> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars());
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&e) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Exponents, FieldElement>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already sorted descending and nonzero.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Exponents, FieldElement)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Exponents, FieldElement)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exponents, FieldElement)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_zero() {
            Some(FieldElement::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> FieldElement {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => FieldElement::zero(),
        }
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &FieldElement)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(FieldElement::zero)
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElement {
        let order = self.ring.order();
        match self.terms.binary_search_by(|t| order.cmp(exps, &t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => FieldElement::zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max()
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.iter().sum()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(e, _)| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(e, _)| e[i] > 0))
            .collect()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        debug_assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MPoly::from_sorted(&self.ring, out)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.mul_term(e, c);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.mul_term(e, c);
        }
        let mut acc: HashMap<Exponents, FieldElement> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1 * c2;
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        MPoly::from_map(&self.ring, acc)
    }

    /// Multiplication by `c * x^e`; monomial orders are multiplicative so the
    /// term order is preserved.
    pub fn mul_term(&self, e: &[u32], c: &FieldElement) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e1, c1)| (e1.iter().zip(e).map(|(a, b)| a + b).collect(), c1 * c))
            .collect();
        MPoly::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &FieldElement) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|(e, c1)| (e.clone(), c1 * c))
                .collect(),
        )
    }

    pub fn pow(&self, mut n: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, itself free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut buckets: Vec<Vec<(Exponents, FieldElement)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            buckets[k].push((e2, c.clone()));
        }
        let order = self.ring.order();
        buckets
            .into_iter()
            .map(|mut ts| {
                // removing one variable can reorder terms under lex/grevlex
                ts.sort_by(|a, b| order.cmp(&b.0, &a.0));
                MPoly::from_sorted(&self.ring, ts)
            })
            .collect()
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(ring: &Ring, var: usize, coeffs: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                terms.push((e2, v.clone()));
            }
        }
        MPoly::from_terms(ring, terms)
    }

    /// Replaces variable `var` by `expr` and expands.
    pub fn substitute(&self, var: usize, expr: &MPoly) -> MPoly {
        debug_assert!(same_ring(&self.ring, &expr.ring));
        if !self.contains_var(var) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(var);
        let mut acc = MPoly::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = acc.mul(expr).add(c);
        }
        acc
    }

    pub fn substitute_named(&self, var: &str, expr: &MPoly) -> Result<MPoly> {
        if !same_ring(&self.ring, &expr.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.substitute(self.ring.var_index(var)?, expr))
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_many(&self, subs: &[(usize, MPoly)]) -> MPoly {
        if subs.is_empty() {
            return self.clone();
        }
        let mut acc = MPoly::zero(&self.ring);
        // cache powers per substituted variable
        let mut powers: Vec<Vec<MPoly>> = subs
            .iter()
            .map(|(_, p)| vec![MPoly::one(&self.ring), p.clone()])
            .collect();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let mut term = MPoly::one(&self.ring);
            for (k, (v, _)) in subs.iter().enumerate() {
                let d = e[*v] as usize;
                rest[*v] = 0;
                if d == 0 {
                    continue;
                }
                while powers[k].len() <= d {
                    let next = powers[k].last().unwrap().mul(&powers[k][1]);
                    powers[k].push(next);
                }
                term = term.mul(&powers[k][d]);
            }
            acc = acc.add(&term.mul_term(&rest, c));
        }
        acc
    }

    /// Substitutes a scalar for one variable.
    pub fn eval_var(&self, var: usize, value: &FieldElement) -> MPoly {
        if !self.contains_var(var) {
            return self.clone();
        }
        let mut pw: Vec<FieldElement> = vec![FieldElement::one()];
        let terms = self.terms.iter().map(|(e, c)| {
            let d = e[var] as usize;
            while pw.len() <= d {
                let n = pw.last().unwrap() * value;
                pw.push(n);
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            (e2, c * &pw[d])
        });
        let terms: Vec<_> = terms.collect();
        MPoly::from_terms(&self.ring, terms)
    }

    /// Full evaluation; `values.len()` must equal the number of variables.
    pub fn evaluate(&self, values: &[FieldElement]) -> FieldElement {
        assert_eq!(values.len(), self.ring.nvars());
        let mut pw: Vec<Vec<FieldElement>> = vec![vec![FieldElement::one()]; values.len()];
        let mut acc = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let d = d as usize;
                while pw[i].len() <= d {
                    let n = pw[i].last().unwrap() * &values[i];
                    pw[i].push(n);
                }
                t = &t * &pw[i][d];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Iterated partial derivative.
    pub fn derivative(&self, var: usize, order: u32) -> MPoly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e[var] < order {
                continue;
            }
            let mut f: i64 = 1;
            for k in 0..order {
                f *= (e[var] - k) as i64;
            }
            let mut e2 = e.clone();
            e2[var] -= order;
            terms.push((e2, c * &FieldElement::from_int(f)));
        }
        // shifting one exponent down keeps lex order but not always grevlex
        MPoly::from_terms(&self.ring, terms)
    }

    pub fn derivative_named(&self, var: &str, order: u32) -> Result<MPoly> {
        Ok(self.derivative(self.ring.var_index(var)?, order))
    }

    /// Exact quotient `f / g`; errors with `NotDivisible` when `g` does not
    /// divide `f`.
    pub fn exact_divide(&self, g: &MPoly) -> Result<MPoly> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !same_ring(&self.ring, &g.ring) {
            return Err(Error::RingMismatch);
        }
        if g.terms.len() == 1 {
            let (ge, gc) = &g.terms[0];
            let inv = gc.inv();
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if e.iter().zip(ge).any(|(a, b)| a < b) {
                    return Err(Error::NotDivisible);
                }
                out.push((e.iter().zip(ge).map(|(a, b)| a - b).collect(), c * &inv));
            }
            return Ok(MPoly::from_sorted(&self.ring, out));
        }
        let (ge, gc) = (&g.terms[0].0, &g.terms[0].1);
        let inv = gc.inv();
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((e, c)) = r.terms.first() {
            if e.iter().zip(ge).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible);
            }
            let qe: Exponents = e.iter().zip(ge).map(|(a, b)| a - b).collect();
            let qc = c * &inv;
            r = r.sub(&g.mul_term(&qe, &qc));
            q.push((qe, qc));
        }
        Ok(MPoly::from_sorted(&self.ring, q))
    }

    /// One step of `f = (var - a)*quotient + remainder` with the remainder
    /// free of `var` (synthetic division in `var`).
    pub fn peel_remainder(&self, var: usize, a: &FieldElement) -> (MPoly, MPoly) {
        let coeffs = self.coeffs_in(var);
        if coeffs.is_empty() {
            return (MPoly::zero(&self.ring), MPoly::zero(&self.ring));
        }
        let n = coeffs.len() - 1;
        if n == 0 {
            return (MPoly::zero(&self.ring), coeffs[0].clone());
        }
        let mut b: Vec<MPoly> = vec![MPoly::zero(&self.ring); n];
        b[n - 1] = coeffs[n].clone();
        for k in (1..n).rev() {
            b[k - 1] = coeffs[k].add(&b[k].scale(a));
        }
        let rem = coeffs[0].add(&b[0].scale(a));
        (MPoly::from_coeffs_in(&self.ring, var, &b), rem)
    }

    /// Like [`MPoly::peel_remainder`] but for a polynomial center: divides
    /// `f - f|_{var=center}` by `var - center`. `center` must not contain `var`.
    pub fn peel_remainder_poly(&self, var: usize, center: &MPoly) -> (MPoly, MPoly) {
        debug_assert!(!center.contains_var(var));
        let coeffs = self.coeffs_in(var);
        if coeffs.is_empty() {
            return (MPoly::zero(&self.ring), MPoly::zero(&self.ring));
        }
        let n = coeffs.len() - 1;
        if n == 0 {
            return (MPoly::zero(&self.ring), coeffs[0].clone());
        }
        let mut b: Vec<MPoly> = vec![MPoly::zero(&self.ring); n];
        b[n - 1] = coeffs[n].clone();
        for k in (1..n).rev() {
            b[k - 1] = coeffs[k].add(&b[k].mul(center));
        }
        let rem = coeffs[0].add(&b[0].mul(center));
        (MPoly::from_coeffs_in(&self.ring, var, &b), rem)
    }

    /// Exact division by `(var - a)^m`.
    pub fn div_linear_power(&self, var: usize, a: &FieldElement, m: u32) -> Result<MPoly> {
        let mut f = self.clone();
        for _ in 0..m {
            let (q, r) = f.peel_remainder(var, a);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            f = q;
        }
        Ok(f)
    }

    /// Largest `m` with `(var - a)^m` dividing `f` (f nonzero).
    pub fn linear_factor_multiplicity(&self, var: usize, a: &FieldElement) -> u32 {
        let mut f = self.clone();
        let mut m = 0;
        while !f.is_zero() {
            let (q, r) = f.peel_remainder(var, a);
            if !r.is_zero() {
                break;
            }
            f = q;
            m += 1;
        }
        m
    }

    /// Homogenizes to `degree` using the ring variable `newvar` (absent from f).
    pub fn homogenize(&self, newvar: usize, degree: u32) -> Result<MPoly> {
        let total = self.total_degree().unwrap_or(0);
        if degree < total {
            return Err(Error::DegreeTooSmall { degree, total });
        }
        if self.contains_var(newvar) {
            return Err(Error::Invalid(
                "homogenizing variable occurs in polynomial".into(),
            ));
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let d: u32 = e.iter().sum();
            let mut e2 = e.clone();
            e2[newvar] = degree - d;
            (e2, c.clone())
        });
        Ok(MPoly::from_terms(&self.ring, terms.collect::<Vec<_>>()))
    }

    pub fn dehomogenize(&self, var: usize) -> MPoly {
        self.eval_var(var, &FieldElement::one())
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn map_to(&self, target: &Ring) -> Result<MPoly> {
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v).ok())
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.nvars()];
            for (i, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e2[j] = d,
                    None => return Err(Error::UnknownVariable(self.ring.vars()[i].clone())),
                }
            }
            terms.push((e2, c.clone()));
        }
        Ok(MPoly::from_terms(target, terms))
    }

    /// Moves the polynomial into `target` with an explicit index map
    /// (`map[i]` is the target index of source variable `i`).
    pub fn map_vars(&self, target: &Ring, map: &[usize]) -> MPoly {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = vec![0; target.nvars()];
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    e2[map[i]] += d;
                }
            }
            (e2, c.clone())
        });
        MPoly::from_terms(target, terms.collect::<Vec<_>>())
    }

    /// Same polynomial in a ring differing only by order or by a field
    /// context containing the current coefficients.
    pub fn reinterpret(&self, target: &Ring) -> MPoly {
        assert_eq!(self.ring.nvars(), target.nvars());
        MPoly::from_terms(target, self.terms.clone())
    }

    pub fn squarefree_part(&self) -> MPoly {
        let g = self.repeated_part();
        self.exact_divide(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.repeated_part().is_constant()
    }

    /// `gcd(f, df/dv for all v)`: the product of repeated factors.
    fn repeated_part(&self) -> MPoly {
        let mut polys = vec![self.clone()];
        for v in self.support() {
            polys.push(self.derivative(v, 1));
        }
        gcd_many(&polys)
    }

    /// Taylor shift: `f(x_v + a_v)` for the listed variables.
    pub fn shift(&self, shifts: &[(usize, FieldElement)]) -> MPoly {
        let subs: Vec<(usize, MPoly)> = shifts
            .iter()
            .filter(|(_, a)| !a.is_zero())
            .map(|(v, a)| {
                (
                    *v,
                    MPoly::var(&self.ring, *v).add(&MPoly::constant(&self.ring, a.clone())),
                )
            })
            .collect();
        self.substitute_many(&subs)
    }

    /// Drops terms of total degree >= `d`.
    pub fn truncate_below(&self, d: u32) -> MPoly {
        MPoly::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() < d)
                .cloned()
                .collect(),
        )
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self))
    }
}
