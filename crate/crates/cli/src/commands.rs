//! Table-producing commands. Row order is fixed: the second grid is the
//! outer loop, the first the inner one.

use rayon::prelude::*;
use wrightsol_core::cauchy::{CauchyProblemSpec, CauchySolver, Estimate, QuadratureConfig};
use wrightsol_core::fundsol::{shift_space, shift_time, FundamentalSolutionSpec};
use wrightsol_core::selfsim::{u_j, SelfSimilarSpec, SimilarityVariable};
use wrightsol_core::specfun::{
    gen_wright, wright_phi, wright_phi_auto, wright_phi_contour, Evaluation, GenWrightParams, Method, SeriesControl,
    WrightParams,
};
use wrightsol_core::{Complex64, Error};

use crate::table::{Cell, Table};
use crate::{CliError, Params, Result};

/// Row-level flag for a numerical failure; parameter errors abort instead.
pub fn flag_of(e: &Error) -> std::result::Result<&'static str, CliError> {
    Ok(match e {
        Error::InvalidParams(_) | Error::DomainError(_) | Error::UnknownFunction(_) | Error::GrowthViolation { .. } => {
            return Err(CliError::Numeric(e.clone()))
        }
        Error::NonConvergence { .. } => "nonconvergence",
        Error::CatastrophicCancellation { .. } => "cancellation",
        Error::RatioUndefined(_) => "ratio-undefined",
        Error::RealnessViolation { .. } => "realness",
        Error::ToleranceNotMet { .. } => "tolerance",
    })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Series => "series",
        Method::ExtendedSeries => "extended-series",
        Method::Contour => "contour",
    }
}

fn pairs(inner: &[f64], outer: &[f64]) -> Vec<(f64, f64)> {
    outer.iter().flat_map(|&o| inner.iter().map(move |&i| (i, o))).collect()
}

fn complex_rows(
    table: &mut Table,
    points: Vec<(f64, f64)>,
    eval: impl Fn(Complex64) -> wrightsol_core::Result<Evaluation> + Sync,
) -> Result<()> {
    let results: Vec<_> = points
        .par_iter()
        .map(|&(re, im)| eval(Complex64::new(re, im)))
        .collect();
    for ((re, im), r) in points.into_iter().zip(results) {
        let row = match r {
            Ok(v) => vec![
                Cell::Num(v.value.re),
                Cell::Num(v.value.im),
                Cell::Num(v.error),
                Cell::Text(method_name(v.method).into()),
                Cell::Text("ok".into()),
            ],
            Err(e) => {
                let flag = flag_of(&e)?;
                vec![
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                    Cell::Text("none".into()),
                    Cell::Text(flag.into()),
                ]
            }
        };
        let mut full = vec![Cell::Num(re), Cell::Num(im)];
        full.extend(row);
        table.push(full);
    }
    Ok(())
}

/// `φ(−σ, β, z)` over a grid of `z`.
pub fn wright(p: &Params) -> Result<Table> {
    p.allow(&["sigma", "beta", "z_re", "z_im", "method"])?;
    let (sigma, beta) = (p.f64("sigma")?, p.f64("beta")?);
    WrightParams::new(sigma, beta, Complex64::new(0.0, 0.0))?;
    let (re, im) = (p.grid("z_re")?, p.grid_or("z_im", "0")?);
    let method = p.text_or("method", "auto")?;
    let ctrl = SeriesControl::default();
    let eval = |z: Complex64| {
        let w = WrightParams { sigma, beta, z };
        match method.as_str() {
            "series" => wright_phi(&w, &ctrl),
            "contour" => wright_phi_contour(&w),
            _ => wright_phi_auto(&w, &ctrl),
        }
    };
    if !["auto", "series", "contour"].contains(&method.as_str()) {
        return Err(CliError::Usage(format!(
            "method must be auto, series or contour, got `{method}`"
        )));
    }
    let mut t = Table::new(&["z_re", "z_im", "re", "im", "err_est", "method", "flag"]);
    complex_rows(&mut t, pairs(&re, &im), eval)?;
    Ok(t)
}

/// `W_{(μ,a),(ν,b)}(z)` over a grid of `z`.
pub fn genwright(p: &Params) -> Result<Table> {
    p.allow(&["mu", "a", "nu", "b", "z_re", "z_im"])?;
    let base = GenWrightParams {
        mu: p.f64("mu")?,
        a: p.f64("a")?,
        nu: p.f64("nu")?,
        b: p.f64("b")?,
        z: Complex64::new(0.0, 0.0),
    };
    base.validate()?;
    let (re, im) = (p.grid("z_re")?, p.grid_or("z_im", "0")?);
    let ctrl = SeriesControl::default();
    let mut t = Table::new(&["z_re", "z_im", "re", "im", "err_est", "method", "flag"]);
    complex_rows(&mut t, pairs(&re, &im), |z| {
        gen_wright(&GenWrightParams { z, ..base }, &ctrl)
    })?;
    Ok(t)
}

/// `D^γ ∂^s Γ_b(dx, dy)` over a grid.
pub fn fundsol(p: &Params) -> Result<Table> {
    p.allow(&["alpha", "n", "b", "time_shift", "space_order", "dx", "dy", "validation"])?;
    let (alpha, n, b) = (p.f64("alpha")?, p.u32("n")?, p.f64("b")?);
    let spec = if p.bool_or("validation", false)? {
        FundamentalSolutionSpec::validation(alpha, n, b)?
    } else {
        FundamentalSolutionSpec::new(alpha, n, b)?
    };
    let shifted = shift_space(
        shift_time(spec, p.f64_or("time_shift", 0.0)?),
        p.u32_or("space_order", 0)?,
    );
    let (dx, dy) = (p.grid("dx")?, p.grid("dy")?);
    if let Some(bad) = dy.iter().find(|v| !(**v > 0.0)) {
        return Err(CliError::Usage(format!("dy must be positive, got {bad}")));
    }
    let points = pairs(&dx, &dy);
    let ctrl = SeriesControl::default();
    let values: Vec<_> = points.par_iter().map(|&(x, y)| shifted.evaluate(x, y, &ctrl)).collect();
    let mut t = Table::new(&["dx", "dy", "value", "flag"]);
    for ((x, y), v) in points.into_iter().zip(values) {
        let (v, flag) = match v {
            Ok(v) => (v, "ok"),
            Err(e) => (f64::NAN, flag_of(&e)?),
        };
        t.push(vec![Cell::Num(x), Cell::Num(y), Cell::Num(v), Cell::Text(flag.into())]);
    }
    Ok(t)
}

/// Self-similar solution `u_j(x, y)` over a grid of `x, y > 0`.
pub fn selfsim(p: &Params) -> Result<Table> {
    p.allow(&["alpha", "beta", "d", "b", "j", "x", "y"])?;
    let d = p.int_opt("d")?.unwrap_or(1);
    let d = i8::try_from(d).map_err(|_| CliError::Usage(format!("d must be +1 or -1, got {d}")))?;
    let spec = SelfSimilarSpec::new(p.f64("alpha")?, p.f64("beta")?, d, p.f64_or("b", 0.0)?, p.u32("j")?)?;
    let (xs, ys) = (p.grid("x")?, p.grid("y")?);
    let points = pairs(&xs, &ys);
    let vars = points
        .iter()
        .map(|&(x, y)| SimilarityVariable::new(&spec, x, y))
        .collect::<wrightsol_core::Result<Vec<_>>>()?;
    let ctrl = SeriesControl::default();
    let values: Vec<_> = vars.par_iter().map(|v| u_j(&spec, v, &ctrl)).collect();
    let mut t = Table::new(&["x", "y", "t", "u", "flag"]);
    for (v, u) in vars.into_iter().zip(values) {
        let (u, flag) = match u {
            Ok(u) => (u, "ok"),
            Err(e) => (f64::NAN, flag_of(&e)?),
        };
        t.push(vec![
            Cell::Num(v.x),
            Cell::Num(v.y),
            Cell::Num(v.t),
            Cell::Num(u),
            Cell::Text(flag.into()),
        ]);
    }
    Ok(t)
}

pub fn quadrature_config(p: &Params) -> Result<QuadratureConfig> {
    let d = QuadratureConfig::default();
    let cfg = QuadratureConfig {
        abs_tol: p.f64_or("abs_tol", d.abs_tol)?,
        rel_tol: p.f64_or("rel_tol", d.rel_tol)?,
        tail_tol: p.f64_or("tail_tol", d.tail_tol)?,
        max_panels: p.u32_or("max_panels", d.max_panels as u32)? as usize,
        grading_points: d.grading_points,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// The Cauchy problem on an `x × y` grid.
pub fn solve(p: &Params) -> Result<Table> {
    p.allow(&[
        "alpha",
        "n",
        "phi",
        "psi",
        "f",
        "xgrid",
        "ygrid",
        "abs_tol",
        "rel_tol",
        "tail_tol",
        "max_panels",
    ])?;
    let spec = CauchyProblemSpec::parse(
        p.f64("alpha")?,
        p.u32("n")?,
        &p.text_or("phi", "zero")?,
        &p.text_or("psi", "zero")?,
        &p.text_or("f", "zero")?,
    )?;
    let (xs, ys) = (p.grid("xgrid")?, p.grid("ygrid")?);
    if let Some(bad) = ys.iter().find(|v| !(**v > 0.0)) {
        return Err(CliError::Usage(format!("ygrid values must be positive, got {bad}")));
    }
    let solver = CauchySolver::new(spec, quadrature_config(p)?)?;
    let points = pairs(&xs, &ys);
    let values: Vec<wrightsol_core::Result<Estimate>> = points.par_iter().map(|&(x, y)| solver.value(x, y)).collect();
    let mut t = Table::new(&["x", "y", "u", "err_est", "flag"]);
    for ((x, y), v) in points.into_iter().zip(values) {
        let (u, err, flag) = match v {
            Ok(e) => (e.value, e.error, if e.converged { "ok" } else { "tolerance" }),
            Err(e) => (f64::NAN, f64::NAN, flag_of(&e)?),
        };
        t.push(vec![
            Cell::Num(x),
            Cell::Num(y),
            Cell::Num(u),
            Cell::Num(err),
            Cell::Text(flag.into()),
        ]);
    }
    Ok(t)
}
