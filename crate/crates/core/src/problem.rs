//! JSON problem files shared by the command line and the case manifests.

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{parse_element, parse_minpoly, FieldContext, FieldElement};
use crate::linsys::{full_system, LinearSystem, Point, PointChain};
use crate::mpoly::{parse_poly, MPoly, MonomialOrder, PolyRing, Ring};
use crate::parsch::SingularitySpecSet;

/// A number given either as a JSON integer or as text such as `"22/7"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn value(&self, ctx: &FieldContext) -> Result<FieldElement> {
        match self {
            Scalar::Int(n) => Ok(FieldElement::from_int(*n)),
            Scalar::Text(s) => parse_element(s, ctx),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemEntry {
    pub degree: Option<u32>,
    pub sections: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    /// Minimal polynomial of the quadratic generator `r`.
    pub field: Option<String>,
    pub ambient: Option<Vec<String>>,
    #[serde(default)]
    pub systems: Vec<SystemEntry>,
    #[serde(default)]
    pub points: Vec<Vec<Scalar>>,
    /// Per chain for `linsys`, per system and chain for `parsch`.
    #[serde(default)]
    pub mults: Value,
    /// Per chain; an empty list is a free slot.
    #[serde(default)]
    pub tangents: Vec<Vec<Vec<Scalar>>>,
    #[serde(default)]
    pub eq: Vec<Vec<usize>>,
    #[serde(default)]
    pub ne: Vec<Vec<usize>>,
    #[serde(default)]
    pub d: usize,
    /// Extra equations for `solve`, in the scheme's variables.
    #[serde(default)]
    pub slice: Vec<String>,
    /// Hand-written scheme for `solve`: variable names and generators.
    pub variables: Option<Vec<String>>,
    pub generators: Option<Vec<String>>,
    /// Branch sextic in `x, y, z` for `cover`.
    pub sextic: Option<String>,
    /// Double-line coordinate for `cover`.
    pub line: Option<String>,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn field_err(path: &str, e: Error) -> Error {
    Error::Invalid(format!("{path}: {e}"))
}

pub fn parse_point(v: &[Scalar], ctx: &FieldContext, path: &str) -> Result<Point> {
    if v.len() != 2 {
        return Err(Error::Invalid(format!(
            "{path}: expected two coordinates, got {}",
            v.len()
        )));
    }
    let a = v[0].value(ctx).map_err(|e| field_err(path, e))?;
    let b = v[1].value(ctx).map_err(|e| field_err(path, e))?;
    Ok((a, b))
}

impl ProblemFile {
    pub fn context(&self) -> Result<FieldContext> {
        match &self.field {
            None => Ok(FieldContext::Rationals),
            Some(t) => parse_minpoly(t).map_err(|e| field_err("field", e)),
        }
    }

    /// The context, overridden by an explicit minimal polynomial.
    pub fn context_with(&self, field: Option<&str>) -> Result<FieldContext> {
        match field {
            Some(t) => parse_minpoly(t).map_err(|e| field_err("--field", e)),
            None => self.context(),
        }
    }

    pub fn affine(&self, ctx: &FieldContext) -> Result<Ring> {
        let names = self
            .ambient
            .clone()
            .unwrap_or_else(|| vec!["x".into(), "y".into()]);
        if names.len() != 2 {
            return Err(Error::Invalid(format!(
                "ambient: expected two variables, got {}",
                names.len()
            )));
        }
        PolyRing::new(ctx.clone(), names, MonomialOrder::Lex).map_err(|e| field_err("ambient", e))
    }

    pub fn linear_systems(&self, ring: &Ring) -> Result<Vec<LinearSystem>> {
        let mut out = Vec::new();
        for (k, s) in self.systems.iter().enumerate() {
            let path = format!("systems[{k}]");
            match (&s.degree, &s.sections) {
                (Some(d), None) => out.push(full_system(ring, *d)),
                (None, Some(secs)) => {
                    let polys: Vec<MPoly> = secs
                        .iter()
                        .enumerate()
                        .map(|(j, t)| {
                            parse_poly(ring, t)
                                .map_err(|e| field_err(&format!("{path}.sections[{j}]"), e))
                        })
                        .collect::<Result<_>>()?;
                    let degree = polys
                        .iter()
                        .filter_map(|p| p.total_degree())
                        .max()
                        .unwrap_or(0);
                    out.push(LinearSystem {
                        ring: ring.clone(),
                        degree,
                        sections: polys,
                    });
                }
                _ => {
                    return Err(Error::Invalid(format!(
                        "{path}: give exactly one of degree, sections"
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn base_points(&self, ctx: &FieldContext) -> Result<Vec<Point>> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| parse_point(p, ctx, &format!("points[{i}]")))
            .collect()
    }

    pub fn tangent_slots(&self, ctx: &FieldContext) -> Result<Vec<Vec<Option<Point>>>> {
        let mut out = Vec::new();
        for (i, chain) in self.tangents.iter().enumerate() {
            let mut slots = Vec::new();
            for (j, t) in chain.iter().enumerate() {
                if t.is_empty() {
                    slots.push(None);
                } else {
                    slots.push(Some(parse_point(t, ctx, &format!("tangents[{i}][{j}]"))?));
                }
            }
            out.push(slots);
        }
        Ok(out)
    }

    fn mults_as<T: for<'de> Deserialize<'de>>(&self, shape: &str) -> Result<T> {
        let v = if self.mults.is_null() {
            Value::Array(Vec::new())
        } else {
            self.mults.clone()
        };
        serde_json::from_value(v)
            .map_err(|e| Error::Invalid(format!("mults: expected {shape}: {e}")))
    }

    /// Chains for a single linear system; every tangent must be given.
    pub fn chains(&self, ctx: &FieldContext) -> Result<Vec<PointChain>> {
        let mults: Vec<Vec<u32>> = self.mults_as("a list of multiplicity lists")?;
        let points = self.base_points(ctx)?;
        let slots = self.tangent_slots(ctx)?;
        if mults.len() != points.len() {
            return Err(Error::Invalid(format!(
                "mults: {} chains for {} points",
                mults.len(),
                points.len()
            )));
        }
        let mut out = Vec::new();
        for (i, (p, m)) in points.into_iter().zip(mults).enumerate() {
            let t: Vec<Point> = slots
                .get(i)
                .map(|s| {
                    s.iter()
                        .enumerate()
                        .map(|(j, v)| {
                            v.clone().ok_or_else(|| {
                                Error::Invalid(format!(
                                    "tangents[{i}][{j}]: free slot not allowed here"
                                ))
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?
                .unwrap_or_default();
            let chain = PointChain::new(p, m, t);
            chain
                .validate()
                .map_err(|e| field_err(&format!("chain {}", i + 1), e))?;
            out.push(chain);
        }
        Ok(out)
    }

    pub fn spec(&self, ctx: &FieldContext) -> Result<SingularitySpecSet> {
        let ring = self.affine(ctx)?;
        let spec = SingularitySpecSet {
            systems: self.linear_systems(&ring)?,
            points: self.base_points(ctx)?,
            mults: self.mults_as("one table of multiplicity lists per system")?,
            tangents: self.tangent_slots(ctx)?,
            eq: self.eq.clone(),
            ne: self.ne.clone(),
            d: self.d,
        };
        if spec.systems.is_empty() {
            return Ok(spec);
        }
        spec.validate()?;
        Ok(spec)
    }
}
