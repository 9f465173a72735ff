//! Batch commands behind the `singcurve` binary. Each command returns its
//! printed output and exit code; trace text goes to a separate buffer.

use std::fmt::Write as _;

use crate::doublecover::{assemble_quartic, plane_ring, BranchCurve};
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::gb::{slice, solve_zero_dim, DEFAULT_MAX_STEPS};
use crate::linsys::{lin_sys, next_center, normalize_tangent, PointChain};
use crate::mpoly::{parse_poly, MonomialOrder, PolyRing};
use crate::parsch::{par_sch, param_ring, system_conditions, Scheme};
use crate::problem::ProblemFile;
use crate::verify::{load_case, verify_case, CASE_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;

#[derive(Clone, Debug)]
pub struct Options {
    pub field: Option<String>,
    pub slice: Vec<String>,
    pub line: Option<String>,
    pub case: Option<String>,
    pub trace: bool,
    pub max_steps: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            field: None,
            slice: Vec::new(),
            line: None,
            case: None,
            trace: false,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub trace: String,
}

/// Exit code for an error: input problems are 1, failed computations 2.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::StepCapExceeded(_)
        | Error::NotZeroDimensional
        | Error::SplittingDegreeExceeded(_)
        | Error::TangencyFailure
        | Error::NotAPerfectSquare
        | Error::NotDivisible
        | Error::DivisionByZero => EXIT_FAILED,
        _ => EXIT_INVALID,
    }
}

fn outcome(code: i32, output: String, trace: String) -> Outcome {
    Outcome {
        code,
        output,
        trace,
    }
}

/// Runs one command; errors become exit codes with a message line.
pub fn run(command: &str, input: Option<&str>, opts: &Options) -> Outcome {
    let res = match command {
        "linsys" => need(input).and_then(|t| cmd_linsys(t, opts)),
        "parsch" => need(input).and_then(|t| cmd_parsch(t, opts)),
        "solve" => need(input).and_then(|t| cmd_solve(t, opts)),
        "cover" => need(input).and_then(|t| cmd_cover(t, opts)),
        "verify" => cmd_verify(opts),
        other => Err(Error::Invalid(format!("unknown command `{other}`"))),
    };
    res.unwrap_or_else(|e| outcome(error_code(&e), format!("error: {e}\n"), String::new()))
}

fn need(input: Option<&str>) -> Result<&str> {
    input.ok_or_else(|| Error::Invalid("--input is required".into()))
}

fn load(text: &str, opts: &Options) -> Result<(ProblemFile, FieldContext)> {
    let p = crate::problem::parse_problem(text)?;
    let ctx = p.context_with(opts.field.as_deref())?;
    Ok((p, ctx))
}

fn chain_trace(trace: &mut String, i: usize, c: &PointChain) -> Result<()> {
    let mut p = c.base.clone();
    writeln!(
        trace,
        "chain {}: base ({}, {}) mults {:?}",
        i + 1,
        p.0,
        p.1,
        c.mults
    )
    .unwrap();
    for (l, t) in c.tangents.iter().enumerate() {
        let t = normalize_tangent(t)?;
        let (next, swap) = next_center(&p, &t);
        writeln!(
            trace,
            "  level {}: blow up ({}, {}) mult {} along [{}, {}], {} chart, next center ({}, {})",
            l,
            p.0,
            p.1,
            c.mults[l],
            t.0,
            t.1,
            if swap { "swapped" } else { "default" },
            next.0,
            next.1
        )
        .unwrap();
        p = next;
    }
    Ok(())
}

pub fn cmd_linsys(text: &str, opts: &Options) -> Result<Outcome> {
    let (p, ctx) = load(text, opts)?;
    let ring = p.affine(&ctx)?;
    let systems = p.linear_systems(&ring)?;
    if systems.len() != 1 {
        return Err(Error::Invalid(format!(
            "systems: expected one linear system, got {}",
            systems.len()
        )));
    }
    let chains = p.chains(&ctx)?;
    let mut trace = String::new();
    if opts.trace {
        writeln!(
            trace,
            "ambient system: degree {}, dimension {}",
            systems[0].degree,
            systems[0].dim()
        )
        .unwrap();
        for (i, c) in chains.iter().enumerate() {
            chain_trace(&mut trace, i, c)?;
            let partial = lin_sys(&systems[0], &chains[..=i])?;
            writeln!(
                trace,
                "  dimension after chains 1..{}: {}",
                i + 1,
                partial.dim()
            )
            .unwrap();
        }
    }
    let sys = lin_sys(&systems[0], &chains)?;
    let mut out = format!("dimension {}\n", sys.dim());
    for s in &sys.sections {
        writeln!(out, "{s}").unwrap();
    }
    let code = if sys.is_empty() { EXIT_EMPTY } else { EXIT_OK };
    Ok(outcome(code, out, trace))
}

fn build_scheme(
    p: &ProblemFile,
    ctx: &FieldContext,
    opts: &Options,
    trace: &mut String,
) -> Result<Option<Scheme>> {
    if let Some(vars) = &p.variables {
        let ring = PolyRing::new(ctx.clone(), vars.iter().cloned(), MonomialOrder::Grevlex)
            .map_err(|e| Error::Invalid(format!("variables: {e}")))?;
        let gens = p
            .generators
            .as_ref()
            .ok_or_else(|| Error::Invalid("generators: required with variables".into()))?
            .iter()
            .enumerate()
            .map(|(i, g)| {
                parse_poly(&ring, g).map_err(|e| Error::Invalid(format!("generators[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Some(Scheme::new(&ring, gens)));
    }
    let spec = p.spec(ctx)?;
    if spec.systems.is_empty() {
        return Ok(None);
    }
    if opts.trace {
        let r = param_ring(&spec)?;
        writeln!(trace, "parameter ring: {} variables", r.nvars()).unwrap();
        for e in &r.e {
            writeln!(trace, "  E: {e}").unwrap();
        }
        for (z, c) in system_conditions(&r, &spec)?.iter().enumerate() {
            writeln!(
                trace,
                "system {}: restricted dimension {}, condition matrix {} x {}, {} nonzero minors",
                z + 1,
                c.restricted.dim(),
                c.cond.matrix.nrows(),
                c.cond.matrix.ncols,
                c.minors.iter().filter(|m| !m.is_zero()).count()
            )
            .unwrap();
        }
    }
    Ok(Some(par_sch(&spec)?))
}

pub fn cmd_parsch(text: &str, opts: &Options) -> Result<Outcome> {
    let (p, ctx) = load(text, opts)?;
    let mut trace = String::new();
    let Some(s) = build_scheme(&p, &ctx, opts, &mut trace)? else {
        return Ok(outcome(
            EXIT_EMPTY,
            "variables 0\ngenerators 0\n".into(),
            trace,
        ));
    };
    let mut out = format!("variables {}\n", s.ring.nvars());
    for (i, role) in s.layout.iter().enumerate() {
        writeln!(out, "{}\t{role}", s.ring.vars()[i]).unwrap();
    }
    writeln!(out, "generators {}", s.generators.len()).unwrap();
    for g in &s.generators {
        writeln!(out, "{g}").unwrap();
    }
    let code = if s.generators.is_empty() {
        EXIT_EMPTY
    } else {
        EXIT_OK
    };
    Ok(outcome(code, out, trace))
}

pub fn cmd_solve(text: &str, opts: &Options) -> Result<Outcome> {
    let (p, ctx) = load(text, opts)?;
    let mut trace = String::new();
    let Some(s) = build_scheme(&p, &ctx, opts, &mut trace)? else {
        return Ok(outcome(EXIT_EMPTY, "solutions 0\n".into(), trace));
    };
    let slices = if opts.slice.is_empty() {
        &p.slice
    } else {
        &opts.slice
    };
    let extra = slices
        .iter()
        .enumerate()
        .map(|(i, t)| {
            parse_poly(&s.ring, t).map_err(|e| Error::Invalid(format!("slice[{i}]: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = slice(&s, &extra);
    if opts.trace {
        writeln!(
            trace,
            "scheme: {} variables, {} generators",
            s.ring.nvars(),
            s.generators.len()
        )
        .unwrap();
    }
    let pts = solve_zero_dim(&s, opts.max_steps)?;
    let mut out = format!("solutions {}\n", pts.len());
    for pt in &pts {
        let coords: Vec<String> = pt
            .coordinates
            .iter()
            .map(|c| {
                c.as_ref()
                    .map_or_else(|| "?".to_string(), |v| v.to_string())
            })
            .collect();
        write!(out, "({})", coords.join(", ")).unwrap();
        if let Some(m) = pt.context.minpoly_text() {
            write!(out, " over {m}").unwrap();
        }
        if let Some(r) = &pt.residual_minpoly {
            write!(out, " unsplit: {r}").unwrap();
        }
        out.push('\n');
    }
    let code = if pts.is_empty() { EXIT_EMPTY } else { EXIT_OK };
    Ok(outcome(code, out, trace))
}

pub fn cmd_cover(text: &str, opts: &Options) -> Result<Outcome> {
    let (p, ctx) = load(text, opts)?;
    let ring = plane_ring(ctx);
    let src = p
        .sextic
        .as_ref()
        .ok_or_else(|| Error::Invalid("sextic: required".into()))?;
    let mut f = parse_poly(&ring, src).map_err(|e| Error::Invalid(format!("sextic: {e}")))?;
    if !f.is_homogeneous() {
        f = f
            .homogenize(2, 6)
            .map_err(|e| Error::Invalid(format!("sextic: {e}")))?;
    }
    if f.total_degree() != Some(6) {
        return Err(Error::Invalid("sextic: not of degree 6".into()));
    }
    let name = opts.line.as_deref().or(p.line.as_deref()).unwrap_or("y");
    let line = ring
        .var_index(name)
        .map_err(|e| Error::Invalid(format!("line: {e}")))?;
    let (x, curve) = assemble_quartic(
        &BranchCurve {
            sextic: f,
            scale: crate::field::FieldElement::one(),
        },
        line,
    )?;
    let mut trace = String::new();
    if opts.trace {
        writeln!(trace, "a2 = {}\nb3 = {}\nc4 = {}", x.a2, x.b3, x.c4).unwrap();
    }
    let out = format!("{}\nscale {}\n", x.equation, curve.scale);
    Ok(outcome(EXIT_OK, out, trace))
}

pub fn cmd_verify(opts: &Options) -> Result<Outcome> {
    let which = opts.case.as_deref().unwrap_or("all");
    let names: Vec<&str> = if which == "all" {
        CASE_NAMES.to_vec()
    } else {
        vec![which]
    };
    let cases = names
        .iter()
        .map(|n| load_case(n))
        .collect::<Result<Vec<_>>>()?;
    let reports = crate::par::map(&cases, |c| verify_case(c, opts.max_steps));
    let mut out = String::new();
    for r in &reports {
        write!(out, "{r}").unwrap();
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(out, "{passed}/{} pass", reports.len()).unwrap();
    let code = if passed == reports.len() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok(outcome(code, out, String::new()))
}
