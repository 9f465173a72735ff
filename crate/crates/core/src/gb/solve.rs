//! Points of zero-dimensional schemes by lex triangularisation.

use super::roots::roots;
use super::upoly::UPoly;
use super::{buchberger_in, reduce_system, PrivateGenerator};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::mpoly::{MPoly, MonomialOrder, Ring};
use crate::parsch::Scheme;

#[derive(Clone, Debug)]
pub struct SolutionPoint {
    /// One entry per ring variable; `None` where the value needs a field
    /// beyond a single quadratic extension.
    pub coordinates: Vec<Option<FieldElement>>,
    pub context: FieldContext,
    pub residual_minpoly: Option<UPoly>,
}

impl SolutionPoint {
    /// All coordinates, when every one of them is known.
    pub fn values(&self) -> Option<Vec<FieldElement>> {
        self.coordinates.iter().cloned().collect()
    }
}

/// `f` as a univariate polynomial in `var`; `f` must involve no other
/// variable.
fn to_upoly(f: &MPoly, var: usize) -> UPoly {
    let deg = f.degree_in(var).unwrap_or(0) as usize;
    let mut c = vec![FieldElement::zero(); deg + 1];
    for (e, v) in f.terms() {
        c[e[var] as usize] = v.clone();
    }
    UPoly::new(c)
}

struct Branch {
    values: Vec<Option<FieldElement>>,
    ctx: FieldContext,
    residual: Option<UPoly>,
}

/// Solves `gens` in the variables `vars` (indices into `ring`), every
/// other variable of `ring` already substituted away.
fn solve_vars(
    ring: &Ring,
    gens: Vec<MPoly>,
    vars: &[usize],
    max_steps: usize,
    out: &mut Vec<Branch>,
    prefix: Branch,
) -> Result<()> {
    let gens: Vec<MPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(());
    }
    if vars.is_empty() {
        out.push(prefix);
        return Ok(());
    }
    let gb = buchberger_in(ring, &gens, max_steps)?;
    if gb.is_unit() {
        return Ok(());
    }
    for &v in vars {
        let pure = gb.basis().iter().any(|g| {
            let e = &g.terms()[0].0;
            e[v] > 0 && e.iter().enumerate().all(|(i, &d)| i == v || d == 0)
        });
        if !pure {
            return Err(Error::NotZeroDimensional);
        }
    }
    let last = *vars.iter().max().unwrap();
    let uni = gb
        .basis()
        .iter()
        .find(|g| g.support() == vec![last])
        .ok_or(Error::NotZeroDimensional)?;
    let found = roots(&to_upoly(uni, last), ring.ctx());
    let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != last).collect();
    for (value, ctx) in found.found {
        let sub_ring = if ctx == *ring.ctx() {
            ring.clone()
        } else {
            ring.with_ctx(ctx.clone())
        };
        let next: Vec<MPoly> = gb
            .basis()
            .iter()
            .map(|g| g.reinterpret(&sub_ring).eval_var(last, &value))
            .collect();
        let mut values = prefix.values.clone();
        values[last] = Some(value);
        let branch = Branch {
            values,
            ctx,
            residual: None,
        };
        solve_vars(&sub_ring, next, &rest, max_steps, out, branch)?;
    }
    for r in found.residual {
        out.push(Branch {
            values: prefix.values.clone(),
            ctx: ring.ctx().clone(),
            residual: Some(r),
        });
    }
    Ok(())
}

/// Extends each branch by the roots of one private generator.
fn solve_private(ring: &Ring, branches: Vec<Branch>, p: &PrivateGenerator) -> Vec<Branch> {
    let mut out = Vec::new();
    for b in branches {
        if b.residual.is_some() {
            out.push(b);
            continue;
        }
        let r = ring.with_ctx(b.ctx.clone());
        let mut f = p.poly.reinterpret(&r);
        for (v, val) in b.values.iter().enumerate() {
            if let Some(val) = val {
                if f.contains_var(v) {
                    f = f.eval_var(v, val);
                }
            }
        }
        let found = roots(&to_upoly(&f, p.var), &b.ctx);
        for (value, ctx) in found.found {
            let mut values = b.values.clone();
            values[p.var] = Some(value);
            out.push(Branch {
                values,
                ctx,
                residual: None,
            });
        }
        for res in found.residual {
            out.push(Branch {
                values: b.values.clone(),
                ctx: b.ctx.clone(),
                residual: Some(res),
            });
        }
    }
    out
}

/// All points of a zero-dimensional scheme, over Q or a quadratic extension
/// per branch.
pub fn solve_zero_dim(s: &Scheme, max_steps: usize) -> Result<Vec<SolutionPoint>> {
    let ring = s.ring.with_order(MonomialOrder::Lex);
    let gens: Vec<MPoly> = s.generators.iter().map(|g| g.reinterpret(&ring)).collect();
    let red = reduce_system(&gens, max_steps)?;
    let mut branches = Vec::new();
    let start = Branch {
        values: vec![None; ring.nvars()],
        ctx: ring.ctx().clone(),
        residual: None,
    };
    solve_vars(
        &ring,
        red.core.clone(),
        &red.core_vars,
        max_steps,
        &mut branches,
        start,
    )?;
    for p in &red.private {
        branches = solve_private(&ring, branches, p);
    }
    let mut out = Vec::with_capacity(branches.len());
    for b in branches {
        let mut coords = b.values;
        if b.residual.is_none() {
            let mut point: Vec<FieldElement> = coords
                .iter()
                .map(|c| c.clone().unwrap_or_else(FieldElement::zero))
                .collect();
            for (v, expr) in &red.linear {
                let val = expr.evaluate(&point);
                coords[*v] = Some(val.clone());
                point[*v] = val;
            }
            for g in &gens {
                if !g.evaluate(&point).is_zero() {
                    return Err(Error::Invalid("solution fails a generator".into()));
                }
            }
        }
        out.push(SolutionPoint {
            coordinates: coords,
            context: b.ctx,
            residual_minpoly: b.residual,
        });
    }
    Ok(out)
}

/// The points, or the first residual factor if some branch did not split.
pub fn require_split(points: Vec<SolutionPoint>) -> Result<Vec<SolutionPoint>> {
    if let Some(p) = points.iter().find(|p| p.residual_minpoly.is_some()) {
        return Err(Error::SplittingDegreeExceeded(
            p.residual_minpoly.as_ref().unwrap().to_string(),
        ));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{parse_poly, PolyRing};

    fn scheme(vars: &[&str], src: &[&str]) -> Scheme {
        let r = PolyRing::new(
            FieldContext::Rationals,
            vars.iter().copied(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let g = src.iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        Scheme::new(&r, g)
    }

    #[test]
    fn rational_points() {
        let s = scheme(&["x", "y"], &["x^2 - 4", "y - x"]);
        let mut pts: Vec<String> = solve_zero_dim(&s, 1000)
            .unwrap()
            .iter()
            .map(|p| {
                p.values()
                    .unwrap()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        pts.sort();
        assert_eq!(pts, vec!["-2,-2", "2,2"]);
    }

    #[test]
    fn quadratic_points() {
        let s = scheme(&["x", "y"], &["x^2 - 2", "y - 1"]);
        let pts = solve_zero_dim(&s, 1000).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!(!p.context.is_rational());
            let v = p.values().unwrap();
            assert_eq!((&v[0] * &v[0]).to_string(), "2");
        }
    }

    #[test]
    fn nonlinear_triangular() {
        let s = scheme(&["x", "y"], &["x^2 + y^2 - 5", "x*y - 2"]);
        let pts = require_split(solve_zero_dim(&s, 1000).unwrap()).unwrap();
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn positive_dimension_rejected() {
        let s = scheme(&["x", "y"], &["x*y"]);
        assert!(matches!(
            solve_zero_dim(&s, 1000),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn cubic_residual_reported() {
        let s = scheme(&["x", "y"], &["y^3 - 2", "x - 1"]);
        let pts = solve_zero_dim(&s, 1000).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].residual_minpoly.is_some());
        assert!(require_split(pts).is_err());
    }
}
