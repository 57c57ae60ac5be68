use zonal::bochner::bochner_density;
use zonal::rankone::{spherical_oracle, Exactness};
use zonal::spherical::{phi_hc_series, phi_via_bochner, HcOptions, Method, SphericalError};
use zonal::transforms::{abel_transform, spectral_ff, spherical_transform, spherical_transform_at, RadialFunction, SpectralRule};
use zonal::{Complex64, RankOneSpace, SpectralParam};

use crate::suites::{run_suite, Suite, SuiteOptions};
use crate::table::Table;
use crate::CliError;

fn numeric<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numeric(e.to_string())
}

pub fn parse_methods(s: &str) -> Result<(Vec<Method>, bool), CliError> {
    if s == "all" {
        return Ok((vec![Method::BochnerFourier, Method::HcSeries, Method::Oracle], true));
    }
    let mut out = Vec::new();
    for m in s.split(',') {
        let m = match m.trim() {
            "bochner" => Method::BochnerFourier,
            "series" => Method::HcSeries,
            "oracle" => Method::Oracle,
            other => return Err(CliError::Validation(format!("unknown method '{other}' (bochner, series, oracle or all)"))),
        };
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok((out, false))
}

/// Why `method` cannot evaluate at `t`, if it cannot.
fn inapplicable(method: Method, space: &RankOneSpace, nu: Complex64, t: Complex64) -> Option<&'static str> {
    match method {
        Method::BochnerFourier => None,
        Method::HcSeries if space.q != 0 => Some("the series needs q = 0"),
        Method::HcSeries if t.im != 0.0 || t.re <= 0.0 => Some("the series needs real t > 0"),
        Method::HcSeries if nu.norm() < 1e-12 => Some("the series has a double pole at λ = 0"),
        Method::Oracle if space.q != 0 => Some("the oracle needs q = 0"),
        Method::Oracle if t.im != 0.0 || t.re < 0.0 => Some("the oracle needs real t >= 0"),
        _ => None,
    }
}

pub fn eval(space: &RankOneSpace, lam: &SpectralParam, ts: &[Complex64], methods: &str, tol: Option<f64>) -> Result<Table, CliError> {
    let (methods, all) = parse_methods(methods)?;
    let radius = space.tube_radius();
    let lr = space.lambda_rho(lam);
    if !(lr.re.abs() < 1.0) {
        return Err(CliError::Validation(format!("OutOfStrip: λ = {lr} (ρ-units) needs |Re λ| < 1")));
    }
    for t in ts {
        if !(t.im.abs() < radius) {
            return Err(CliError::Validation(format!("OutsideTube: |Im t| = {} >= {radius}", t.im.abs())));
        }
    }
    let nu = space.nu(lam);
    let opts = HcOptions {
        terms: None,
        tol: tol.unwrap_or(1e-12),
    };
    let mut table = Table::new(&["t_re", "t_im", "value_re", "value_im", "method", "abs_err"]);
    for t in ts {
        for m in &methods {
            if let Some(why) = inapplicable(*m, space, nu, *t) {
                if all {
                    eprintln!("note: {} skipped at t = {t}: {why}", m.name());
                    continue;
                }
                return Err(CliError::Validation(format!("{}: {why} (t = {t})", m.name())));
            }
            let v = match m {
                Method::BochnerFourier => match phi_via_bochner(space, lam, *t) {
                    Ok(v) => v,
                    Err(SphericalError::SlowConvergence(v)) => {
                        eprintln!("warning: slow convergence near the tube boundary at t = {t}");
                        v
                    }
                    Err(SphericalError::OutsideTube { im, radius }) => {
                        return Err(CliError::Validation(format!("OutsideTube: |Im t| = {im} >= {radius}")))
                    }
                    Err(e) => return Err(numeric(e)),
                },
                Method::HcSeries => phi_hc_series(space, lam, t.re, &opts).map_err(numeric)?.value,
                Method::Oracle => spherical_oracle(space, lam, t.re).map_err(numeric)?,
            };
            table.push(vec![t.re.into(), t.im.into(), v.value.re.into(), v.value.im.into(), m.name().into(), v.abs_err.into()]);
        }
    }
    Ok(table)
}

pub fn density(space: &RankOneSpace, lam: &SpectralParam, ups: &[f64]) -> Result<Table, CliError> {
    let d = bochner_density(space, lam).map_err(|e| match e {
        zonal::bochner::BochnerError::OutOfStrip(_) => CliError::Validation(e.to_string()),
        other => numeric(other),
    })?;
    if space.exactness() == Exactness::Experimental {
        eprintln!("note: q > 0 density uses a quadrature normalization (experimental)");
    }
    let mut table = Table::new(&["upsilon", "density_re", "density_im", "closed_form"]);
    for u in ups {
        let v = d.eval(*u).map_err(numeric)?;
        table.push(vec![(*u).into(), v.re.into(), v.im.into(), d.closed_form.into()]);
    }
    Ok(table)
}

pub fn series(space: &RankOneSpace, lam: &SpectralParam, ts: &[f64], terms: Option<usize>, tol: Option<f64>, coefficients: bool) -> Result<Table, CliError> {
    if space.q != 0 {
        return Err(CliError::Validation("the series needs q = 0".into()));
    }
    if space.nu(lam).norm() < 1e-12 {
        return Err(CliError::Validation("the series has a double pole at λ = 0".into()));
    }
    if let Some(t) = ts.iter().find(|t| !(**t > 0.0)) {
        return Err(CliError::Validation(format!("the series needs t > 0, got {t}")));
    }
    let opts = HcOptions {
        terms,
        tol: tol.unwrap_or(1e-12),
    };
    if coefficients {
        let s = phi_hc_series(space, lam, ts[0], &opts).map_err(numeric)?;
        let mut table = Table::new(&["k", "weyl_sign", "coefficient_re", "coefficient_im", "exponent"]);
        for term in s.terms {
            table.push(vec![term.k.into(), (term.weyl_sign as i64).into(), term.coefficient.re.into(), term.coefficient.im.into(), term.exponent.into()]);
        }
        return Ok(table);
    }
    let mut table = Table::new(&["t", "value_re", "value_im", "terms", "tail_bound"]);
    for t in ts {
        let s = phi_hc_series(space, lam, *t, &opts).map_err(numeric)?;
        let per_branch = s.terms.len() / 2;
        table.push(vec![(*t).into(), s.value.value.re.into(), s.value.value.im.into(), per_branch.into(), s.tail_bound.into()]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Abel,
    Spherical,
    SpectralFf,
}

pub fn transform(kind: TransformKind, sigma: f64, grid: &[f64]) -> Result<Table, CliError> {
    if !(0.2..=3.0).contains(&sigma) {
        return Err(CliError::Validation(format!("--sigma must lie in [0.2, 3], got {sigma}")));
    }
    let f = RadialFunction::truncated_gaussian(sigma);
    match kind {
        TransformKind::Abel => {
            let v = abel_transform(&f, grid).map_err(numeric)?;
            let mut table = Table::new(&["t", "abel"]);
            for (t, x) in grid.iter().zip(v) {
                table.push(vec![(*t).into(), x.into()]);
            }
            Ok(table)
        }
        TransformKind::Spherical => {
            let v = spherical_transform_at(&f, grid).map_err(numeric)?;
            let mut table = Table::new(&["lambda", "spherical"]);
            for (l, x) in grid.iter().zip(v) {
                table.push(vec![(*l).into(), x.into()]);
            }
            Ok(table)
        }
        TransformKind::SpectralFf => {
            let rule = SpectralRule::auto(&f).map_err(numeric)?;
            let p = spherical_transform(&f, &rule).map_err(numeric)?;
            let v = spectral_ff(&p, grid).map_err(numeric)?;
            let mut table = Table::new(&["upsilon", "spectral_ff"]);
            for (u, x) in grid.iter().zip(v) {
                table.push(vec![(*u).into(), x.into()]);
            }
            Ok(table)
        }
    }
}

/// Report table and whether every check passed.
pub fn verify(suite: Suite, opts: &SuiteOptions) -> (Table, bool) {
    let checks = run_suite(suite, opts);
    let mut table = Table::new(&["suite", "check", "defect", "tolerance", "pass", "detail"]);
    let mut ok = true;
    for c in checks {
        ok &= c.pass;
        if !c.pass {
            eprintln!("FAIL {} / {}: defect {:e} > {:e} ({})", c.suite, c.name, c.defect, c.tolerance, c.detail);
        }
        table.push(vec![c.suite.name().into(), c.name.into(), c.defect.into(), c.tolerance.into(), c.pass.into(), c.detail.into()]);
    }
    (table, ok)
}
