//! Canonical text form and parser.
//!
//! Printing: terms in descending ring order, `*` for products, `^` for
//! powers. Extension coefficients are written `1/d*(B*r + A)` with integer
//! `A`, `B`. The parser accepts the printed form and ordinary infix input;
//! whitespace and line breaks are ignored.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{MPoly, Ring};
use crate::error::{Error, Result};
use crate::field::{fmt_rational, FieldElement, Rational};

fn fmt_monomial(ring: &Ring, e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &d) in e.iter().enumerate() {
        match d {
            0 => {}
            1 => parts.push(ring.vars()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars()[i], d)),
        }
    }
    parts.join("*")
}

/// `1/d*(B*r + A)` or `(B*r + A)` for an element with nonzero `r`-part.
fn fmt_quadratic(c: &FieldElement) -> String {
    let (a, b) = c.parts();
    let den = c.denominator_lcm();
    let scale = Rational::from_integer(den.clone());
    let bi = (&b * &scale).to_integer();
    let ai = (&a * &scale).to_integer();
    let mut inner = if bi.abs().is_one() {
        if bi.is_negative() {
            "-r".to_string()
        } else {
            "r".to_string()
        }
    } else {
        format!("{bi}*r")
    };
    if !ai.is_zero() {
        if ai.is_negative() {
            inner.push_str(&format!(" - {}", -ai));
        } else {
            inner.push_str(&format!(" + {ai}"));
        }
    }
    if den.is_one() {
        format!("({inner})")
    } else {
        format!("1/{den}*({inner})")
    }
}

pub(crate) fn format_poly(f: &MPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in f.terms().iter().enumerate() {
        let mono = fmt_monomial(f.ring(), e);
        match c.as_rational() {
            Some(q) => {
                let neg = q.is_negative();
                if k == 0 {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                let aq = q.abs();
                if mono.is_empty() {
                    out.push_str(&fmt_rational(&aq));
                } else if aq.is_one() {
                    out.push_str(&mono);
                } else {
                    out.push_str(&fmt_rational(&aq));
                    out.push('*');
                    out.push_str(&mono);
                }
            }
            None => {
                if k > 0 {
                    out.push_str(" + ");
                }
                out.push_str(&fmt_quadratic(c));
                if !mono.is_empty() {
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = chars[st..i].iter().collect();
            toks.push(Tok::Num(txt.parse().expect("digits")));
        } else if ch.is_alphabetic() || ch == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            toks.push(Tok::Sym(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{ch}`")));
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                let d = self.factor()?;
                let c = d
                    .constant_value()
                    .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                if c.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = acc.scale(&c.inv());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    n.to_u32()
                        .ok_or_else(|| Error::Parse("exponent too large".into()))?
                }
                _ => return Err(Error::Parse("expected exponent".into())),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(
                    self.ring,
                    FieldElement::from_rational(Rational::from_integer(n)),
                ))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Ok(i) = self.ring.var_index(&name) {
                    return Ok(MPoly::var(self.ring, i));
                }
                if name == "r" && !self.ring.ctx().is_rational() {
                    return Ok(MPoly::constant(self.ring, self.ring.ctx().generator()?));
                }
                Err(Error::UnknownVariable(name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected `)`".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses text into a polynomial of `ring`.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<MPoly> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, ring };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_extension, FieldContext};
    use crate::mpoly::{MonomialOrder, PolyRing};

    #[test]
    fn prints_rational_terms() {
        let r = PolyRing::new(
            FieldContext::Rationals,
            ["w", "x", "y", "z"],
            MonomialOrder::Block(1),
        )
        .unwrap();
        let f = parse_poly(&r, "1/49*z^4 - 129/28*w*x^2*y + w^2*y^2 + w*x^3").unwrap();
        assert_eq!(f.to_string(), "w^2*y^2 + w*x^3 - 129/28*w*x^2*y + 1/49*z^4");
        assert_eq!(parse_poly(&r, "-x - 1").unwrap().to_string(), "-x - 1");
    }

    #[test]
    fn prints_extension_terms() {
        let q = |s: &str| crate::field::parse_rational(s).unwrap();
        let ctx = make_extension(q("-33/73"), q("9/292")).unwrap();
        let r = PolyRing::new(ctx, ["w", "x", "y", "z"], MonomialOrder::Block(1)).unwrap();
        let text = "w*x^3 + 1/256*(-292*r + 207)*x^4 - 15/32*x^2*y^2 + 1/4*(-73*r\n+ 3)*x*z^3";
        let f = parse_poly(&r, text).unwrap();
        assert_eq!(
            f.to_string(),
            "w*x^3 + 1/256*(-292*r + 207)*x^4 - 15/32*x^2*y^2 + 1/4*(-73*r + 3)*x*z^3"
        );
    }

    #[test]
    fn parse_errors() {
        let r = PolyRing::new(FieldContext::Rationals, ["x"], MonomialOrder::Grevlex).unwrap();
        assert!(matches!(
            parse_poly(&r, "x + y"),
            Err(Error::UnknownVariable(_))
        ));
        assert!(matches!(parse_poly(&r, "x +"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly(&r, "x / x"), Err(Error::Parse(_))));
        assert_eq!(parse_poly(&r, "x/0"), Err(Error::DivisionByZero));
    }
}
