//! `φ_λ` by three routes: the Fourier integral of the Bochner density
//! (valid in the tube `|Im t| < R`), the residue series for `t > 0`, and the
//! oracle in [`crate::rankone`]. Plus the boundary probe at `Im t → R`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::bochner::{bochner_density, linear_fit, BochnerDensity, BochnerError};
use crate::quad::GaussLegendre;
use crate::rankone::{spherical_oracle, RankOneError, RankOneSpace};
use crate::specfun::{gamma_residue, ln_gamma, SpecFunError};
use crate::spectral::SpectralParam;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BochnerFourier,
    HcSeries,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BochnerFourier => "bochner",
            Method::HcSeries => "series",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalValue {
    pub value: Complex64,
    pub method: Method,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SphericalError {
    #[error("|Im t| = {im} is outside the tube of radius {radius}")]
    OutsideTube { im: f64, radius: f64 },
    #[error("|Im t| is within 0.02 of the tube boundary; value {} with error {:e}", .0.value, .0.abs_err)]
    SlowConvergence(SphericalValue),
    #[error("λ = {0} (ρ-units) is outside the strip |Re λ| < 1")]
    OutOfStrip(Complex64),
    #[error("spectral parameter hits a pole of the series coefficients")]
    SpectralPole,
    #[error("series tail bound {tail:e} exceeds tolerance after {terms} terms")]
    NeedMoreTerms { terms: usize, tail: f64 },
    #[error("the series needs t > 0")]
    NonPositiveT,
    #[error("series route needs q = 0")]
    UnsupportedSpace,
    #[error("probe needs at least 6 points in (0, 0.5], got {0}")]
    BadProbeGrid(usize),
    #[error(transparent)]
    Bochner(#[from] BochnerError),
    #[error(transparent)]
    RankOne(#[from] RankOneError),
}

impl From<SpecFunError> for SphericalError {
    fn from(e: SpecFunError) -> Self {
        match e {
            SpecFunError::PoleOfGamma(_) => SphericalError::SpectralPole,
            other => SphericalError::Bochner(BochnerError::SpecFun(other)),
        }
    }
}

/// Distance from the tube boundary below which convergence is reported as slow.
pub const SLOW_BAND: f64 = 0.02;

/// Target accuracy of the Fourier route on `|Im t| ≤ R − 0.1`.
pub const BOCHNER_TOL: f64 = 1e-9;

/// `∫ e^{−iυt} m(λ, υ) dυ` for `|Im t| < R`.
pub fn phi_via_bochner(space: &RankOneSpace, lambda: &SpectralParam, t: Complex64) -> Result<SphericalValue, SphericalError> {
    let radius = space.tube_radius();
    if !(t.im.abs() < radius) {
        return Err(SphericalError::OutsideTube { im: t.im.abs(), radius });
    }
    let lam = space.lambda_rho(lambda);
    if !(lam.re.abs() < 1.0) {
        return Err(SphericalError::OutOfStrip(lam));
    }
    let density = bochner_density(space, lambda)?;
    let v = fourier_of_density(&density, t)?;
    if radius - t.im.abs() < SLOW_BAND {
        return Err(SphericalError::SlowConvergence(v));
    }
    Ok(v)
}

/// Fourier integral of a prepared density; see [`phi_via_bochner`].
///
/// `m` is even, so this is `∫₀^∞ m(υ)(e^{iυt} + e^{−iυt}) dυ`, summed on
/// panels no wider than half a period of `e^{iυ Re t}`. Each exponential is
/// applied in log space so the growth `e^{υ|Im t|}` never overflows.
pub fn fourier_of_density(density: &BochnerDensity, t: Complex64) -> Result<SphericalValue, SphericalError> {
    let radius = density.space.tube_radius();
    let gap = radius - t.im.abs();
    let rho = density.space.rho();
    // envelope e^{−gap υ} υ^{2ρ−2}
    let margin = 10.0 + (2.0 * rho - 2.0).max(0.0) * 10.0;
    let cutoff = (-(1e-17f64).ln() / gap + margin).clamp(40.0, 20_000.0);
    let width = (PI / t.re.abs().max(1e-300)).min(0.5);
    let panels = (cutoff / width).ceil() as usize;
    let fine = GaussLegendre::new(16);
    let coarse = GaussLegendre::new(10);
    let i = Complex64::i();
    let integrand = |u: f64| -> Result<Complex64, BochnerError> {
        let lm = density.ln_eval(u)?;
        Ok((lm + i * u * t).exp() + (lm - i * u * t).exp())
    };
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let h = cutoff / panels as f64;
    for k in 0..panels {
        let lo = h * k as f64;
        let hi = lo + h;
        let mut failure = None;
        let mut eval = |u: f64| match integrand(u) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        };
        let a = fine.integrate(&mut eval, lo, hi);
        let b = coarse.integrate(&mut eval, lo, hi);
        if let Some(e) = failure {
            return Err(e.into());
        }
        total += a;
        err += (a - b).norm();
    }
    // tail beyond the cutoff, bounded by the end value over the decay rate
    let end = integrand(cutoff)?.norm();
    let tail = end / gap.max(1e-3);
    Ok(SphericalValue {
        value: total,
        method: Method::BochnerFourier,
        abs_err: err + tail + 1e-15 * total.norm(),
    })
}

/// One term of the residue series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcSeriesTerm {
    pub k: usize,
    /// `+1` for the `e^{+iνt}` Weyl term.
    pub weyl_sign: i8,
    pub coefficient: Complex64,
    /// Real decay rate `ρ + 2k` of `e^{(±iν − ρ − 2k)t}`.
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HcSeries {
    pub value: SphericalValue,
    pub terms: Vec<HcSeriesTerm>,
    pub tail_bound: f64,
}

fn require_series_space(space: &RankOneSpace) -> Result<(), SphericalError> {
    if space.q != 0 {
        return Err(SphericalError::UnsupportedSpace);
    }
    Ok(())
}

/// `ln C_k(ν)`, the coefficient of `e^{(−iν − ρ − 2k)t}`:
///
/// `C_k(ν) = Γ(2ρ)/Γ(ρ)² · Res_{−k}Γ · Γ(ρ+iν+k) Γ(ρ+k) Γ(−iν−k) / (Γ(ρ+iν) Γ(ρ−iν))`.
fn ln_series_coefficient(rho: f64, nu: Complex64, k: usize) -> Result<(Complex64, f64), SpecFunError> {
    let i = Complex64::i();
    let r = Complex64::new(rho, 0.0);
    let kf = k as f64;
    let ln = ln_gamma(2.0 * r)? - 2.0 * ln_gamma(r)? + ln_gamma(r + i * nu + kf)? + ln_gamma(r + kf)? + ln_gamma(-i * nu - kf)?
        - ln_gamma(r + i * nu)?
        - ln_gamma(r - i * nu)?;
    Ok((ln, gamma_residue(k as u32)))
}

fn series_coefficient(rho: f64, nu: Complex64, k: usize) -> Result<Complex64, SpecFunError> {
    let (ln, res) = ln_series_coefficient(rho, nu, k)?;
    Ok(ln.exp() * res)
}

/// `c(ν) = κ Γ(iν)/Γ(ρ + iν)` with `κ = Γ(2ρ)/Γ(ρ)`, the coefficient of `e^{(iν − ρ)t}`.
pub fn hc_leading_coefficient(space: &RankOneSpace, lambda: &SpectralParam) -> Result<Complex64, SphericalError> {
    require_series_space(space)?;
    let nu = space.nu(lambda);
    Ok(series_coefficient(space.rho(), -nu, 0)?)
}

/// `κ = Γ(2ρ)/Γ(ρ)`; equals `2^{p−1} Γ((p+1)/2)/√π` for `q = 0`.
pub fn hc_kappa(space: &RankOneSpace) -> f64 {
    let rho = Complex64::new(space.rho(), 0.0);
    (ln_gamma(2.0 * rho).unwrap().re - ln_gamma(rho).unwrap().re).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcOptions {
    /// Terms per Weyl branch; `None` picks enough for `tol`.
    pub terms: Option<usize>,
    pub tol: f64,
}

impl Default for HcOptions {
    fn default() -> Self {
        Self { terms: None, tol: 1e-12 }
    }
}

/// `φ_λ(a_t) = Σ_± Σ_k C_k(±ν) e^{(∓iν − ρ − 2k)t}` for `t > 0`, `ν ≠ 0`.
pub fn phi_hc_series(space: &RankOneSpace, lambda: &SpectralParam, t: f64, opts: &HcOptions) -> Result<HcSeries, SphericalError> {
    require_series_space(space)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(SphericalError::NonPositiveT);
    }
    let nu = space.nu(lambda);
    if nu.norm() < 1e-12 {
        return Err(SphericalError::SpectralPole);
    }
    let rho = space.rho();
    let i = Complex64::i();
    let terms = opts.terms.unwrap_or_else(|| ((-opts.tol.ln() / (2.0 * t)).ceil() as usize + 12).min(2000));
    let terms = terms.max(1);
    let mut out = Vec::with_capacity(2 * terms);
    let mut value = Complex64::new(0.0, 0.0);
    let mut last = [0.0f64; 2];
    let mut before_last = [0.0f64; 2];
    for (branch, sign) in [(0usize, 1i8), (1, -1)] {
        // sign +1: e^{+iνt}, coefficient C_k(−ν)
        let arg = if sign > 0 { -nu } else { nu };
        for k in 0..terms {
            let (ln, res) = ln_series_coefficient(rho, arg, k)?;
            let expo = (i * (sign as f64) * nu - rho - 2.0 * k as f64) * t;
            let coefficient = ln.exp() * res;
            let term = (ln + expo).exp() * res;
            value += term;
            before_last[branch] = last[branch];
            last[branch] = term.norm();
            out.push(HcSeriesTerm {
                k,
                weyl_sign: sign,
                coefficient,
                exponent: rho + 2.0 * k as f64,
            });
        }
    }
    let mut tail_bound = 0.0;
    for b in 0..2 {
        let ratio = if before_last[b] > 0.0 {
            (last[b] / before_last[b]).max((-2.0 * t).exp())
        } else {
            (-2.0 * t).exp()
        };
        tail_bound += if ratio < 1.0 { last[b] * ratio / (1.0 - ratio) } else { f64::INFINITY };
    }
    if tail_bound > opts.tol.max(1e-15 * value.norm()) {
        return Err(SphericalError::NeedMoreTerms { terms, tail: tail_bound });
    }
    Ok(HcSeries {
        value: SphericalValue {
            value,
            method: Method::HcSeries,
            abs_err: tail_bound + 1e-15 * value.norm() * terms as f64,
        },
        terms: out,
        tail_bound,
    })
}

/// `|term_{k+1} / term_k|` of the `e^{+iνt}` branch, which tends to `e^{−2t}`.
pub fn series_term_ratios(series: &HcSeries, t: f64) -> Vec<f64> {
    let plus: Vec<&HcSeriesTerm> = series.terms.iter().filter(|s| s.weyl_sign > 0).collect();
    plus.windows(2)
        .map(|w| (w[1].coefficient.norm() / w[0].coefficient.norm()) * (-2.0 * t).exp())
        .collect()
}

/// Fit of the boundary behaviour `φ(i(R − ε)) ≈ c_log ln(1/ε) + c_const`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityFit {
    pub c_log: f64,
    pub c_const: f64,
    /// Max residual over the range of the sampled values.
    pub fit_quality: f64,
    /// `(ε, Re φ, abs_err)` at each grid point.
    pub samples: Vec<(f64, f64, f64)>,
    /// Relative error predicting the last point from a fit on the others.
    pub holdout_error: f64,
}

/// Samples `φ` at `t = i(R − ε)` and fits a logarithmic blow-up. Points in
/// the slow band keep their value; their larger error estimate lowers their
/// weight in the fit.
pub fn singularity_probe(space: &RankOneSpace, lambda: &SpectralParam, eps_grid: &[f64]) -> Result<SingularityFit, SphericalError> {
    if eps_grid.len() < 6 || eps_grid.iter().any(|e| !(*e > 0.0 && *e <= 0.5)) {
        return Err(SphericalError::BadProbeGrid(eps_grid.len()));
    }
    let radius = space.tube_radius();
    let mut samples = Vec::with_capacity(eps_grid.len());
    for eps in eps_grid {
        let v = match phi_via_bochner(space, lambda, Complex64::new(0.0, radius - eps)) {
            Ok(v) => v,
            Err(SphericalError::SlowConvergence(v)) => v,
            Err(e) => return Err(e),
        };
        samples.push((*eps, v.value.re, v.abs_err));
    }
    let weights: Vec<f64> = samples.iter().map(|s| 1.0 / (1.0 + (s.2 / 1e-6).powi(2))).collect();
    let (c_log, c_const) = weighted_log_fit(&samples, &weights);
    let values: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let range = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_res = samples
        .iter()
        .map(|s| (s.1 - (c_log * (1.0 / s.0).ln() + c_const)).abs())
        .fold(0.0, f64::max);
    let n = samples.len();
    let (hl, hc) = weighted_log_fit(&samples[..n - 1], &weights[..n - 1]);
    let last = samples[n - 1];
    let predicted = hl * (1.0 / last.0).ln() + hc;
    Ok(SingularityFit {
        c_log,
        c_const,
        fit_quality: max_res / range.max(1e-300),
        samples,
        holdout_error: (predicted - last.1).abs() / last.1.abs().max(1e-300),
    })
}

fn weighted_log_fit(samples: &[(f64, f64, f64)], weights: &[f64]) -> (f64, f64) {
    let (mut sw, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (s, w) in samples.iter().zip(weights) {
        let x = (1.0 / s.0).ln();
        sw += w;
        sx += w * x;
        sy += w * s.1;
        sxx += w * x * x;
        sxy += w * x * s.1;
    }
    let slope = (sw * sxy - sx * sy) / (sw * sxx - sx * sx);
    (slope, (sy - slope * sx) / sw)
}

/// Evidence for the normalization: the raw Fourier integral of
/// `Υ(λ)Υ(−λ)` at `(λ = 0, t = 1)` against the oracle, whose ratio is the
/// single constant of the Fourier route, and the closed value `1/Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub oracle: f64,
    pub unnormalized: f64,
    pub constant: f64,
    pub closed_form: f64,
    pub relative_defect: f64,
}

pub fn calibrate_bochner(space: &RankOneSpace) -> Result<Calibration, SphericalError> {
    let lambda = SpectralParam::unitary(0.0);
    let oracle = spherical_oracle(space, &lambda, 1.0)?.value.re;
    let mut density = bochner_density(space, &lambda)?;
    let z = density.normalization.re;
    density.normalization = Complex64::new(1.0, 0.0);
    let unnormalized = fourier_of_density(&density, Complex64::new(1.0, 0.0))?.value.re;
    let constant = oracle / unnormalized;
    Ok(Calibration {
        oracle,
        unnormalized,
        constant,
        closed_form: 1.0 / z,
        relative_defect: (constant * z - 1.0).abs(),
    })
}

/// Smallest eigenvalue of `[φ_λ(t_i − t_j)]` for real sample points.
pub fn gram_min_eigenvalue(space: &RankOneSpace, lambda: &SpectralParam, points: &[f64]) -> Result<f64, SphericalError> {
    let n = points.len();
    let density = bochner_density(space, lambda)?;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let d = (points[i] - points[j]).abs();
            let v = fourier_of_density(&density, Complex64::new(d, 0.0))?.value.re;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let eig = SymmetricEigen::new(m);
    Ok(eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

/// Slope-only summary of [`linear_fit`] of `ln|φ(t)|` against `t`, used for decay checks.
pub fn log_slope(ts: &[f64], values: &[f64]) -> f64 {
    let ys: Vec<f64> = values.iter().map(|v| v.abs().ln()).collect();
    linear_fit(ts, &ys).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_value_is_one() {
        for p in [1, 2, 3] {
            let s = RankOneSpace::new(p, 0).unwrap();
            for nu in [0.0, 0.5, 2.0] {
                let v = phi_via_bochner(&s, &SpectralParam::unitary(nu), c(0.0, 0.0)).unwrap();
                assert!((v.value - 1.0).norm() < 1e-8, "p={p} nu={nu} {}", v.value);
            }
        }
    }

    #[test]
    fn bochner_matches_oracle_and_series() {
        let s = RankOneSpace::sl2();
        for nu in [0.5, 1.0] {
            let lam = SpectralParam::unitary(nu);
            for t in [0.5, 1.5, 3.0] {
                let b = phi_via_bochner(&s, &lam, c(t, 0.0)).unwrap();
                let o = spherical_oracle(&s, &lam, t).unwrap();
                let h = phi_hc_series(&s, &lam, t, &HcOptions::default()).unwrap();
                assert!((b.value - o.value).norm() < 1e-7, "t={t} {} {}", b.value, o.value);
                assert!((h.value.value - o.value).norm() < 1e-8, "t={t} {} {}", h.value.value, o.value);
                assert!(b.value.im.abs() <= 10.0 * b.abs_err + 1e-14);
            }
        }
        let lam0 = SpectralParam::unitary(0.0);
        let b = phi_via_bochner(&s, &lam0, c(1.5, 0.0)).unwrap();
        let o = spherical_oracle(&s, &lam0, 1.5).unwrap();
        assert!((b.value - o.value).norm() < 1e-7);
    }

    #[test]
    fn imaginary_argument_is_real_and_above_one() {
        let s = RankOneSpace::sl2();
        let v = phi_via_bochner(&s, &SpectralParam::unitary(0.0), c(0.0, 2.5)).unwrap();
        assert!(v.value.im.abs() < 1e-12 && v.value.re >= 1.0);
        let w = phi_via_bochner(&s, &SpectralParam::unitary(0.0), c(0.0, -2.5)).unwrap();
        assert!((v.value - w.value).norm() < 1e-9);
    }

    #[test]
    fn tube_errors() {
        let s = RankOneSpace::sl2();
        let lam = SpectralParam::unitary(0.0);
        assert!(matches!(phi_via_bochner(&s, &lam, c(0.0, 3.2)), Err(SphericalError::OutsideTube { .. })));
        assert!(matches!(phi_via_bochner(&s, &lam, c(0.0, PI - 0.01)), Err(SphericalError::SlowConvergence(_))));
        assert!(phi_via_bochner(&s, &lam, c(0.0, PI - 0.05)).is_ok());
    }

    #[test]
    fn series_errors() {
        let s = RankOneSpace::sl2();
        assert!(matches!(
            phi_hc_series(&s, &SpectralParam::unitary(0.0), 1.0, &HcOptions::default()),
            Err(SphericalError::SpectralPole)
        ));
        assert!(matches!(
            phi_hc_series(&s, &SpectralParam::unitary(1.0), 0.2, &HcOptions { terms: Some(3), tol: 1e-10 }),
            Err(SphericalError::NeedMoreTerms { .. })
        ));
        // iν = 1 puts both Weyl branches on poles of Γ(∓iν − k)
        assert!(matches!(
            phi_hc_series(&s, &SpectralParam::geodesic(c(0.0, -1.0)), 1.0, &HcOptions::default()),
            Err(SphericalError::SpectralPole)
        ));
    }

    #[test]
    fn leading_coefficient_closed_form() {
        let s = RankOneSpace::sl2();
        assert!((hc_kappa(&s) - 1.0 / PI.sqrt()).abs() < 1e-14);
        let s3 = RankOneSpace::new(3, 0).unwrap();
        // 2^{p−1} Γ((p+1)/2)/√π with p = 3
        assert!((hc_kappa(&s3) - 4.0 / PI.sqrt()).abs() < 1e-13);
        let lam = SpectralParam::unitary(1.0);
        let cf = hc_leading_coefficient(&s, &lam).unwrap();
        let g = crate::specfun::gamma(c(0.0, 1.0)).unwrap() / crate::specfun::gamma(c(0.5, 1.0)).unwrap();
        assert!((cf - g / PI.sqrt()).norm() < 1e-14);
    }

    #[test]
    fn term_ratio_tends_to_exp_minus_2t() {
        let s = RankOneSpace::sl2();
        let t = 1.0;
        let h = phi_hc_series(&s, &SpectralParam::unitary(1.0), t, &HcOptions { terms: Some(25), tol: 1e-8 }).unwrap();
        let ratios = series_term_ratios(&h, t);
        // |C_{k+1}/C_k| = 1 − 2(1 − ρ)/k + O(k⁻²)
        for (k, r) in ratios.iter().enumerate().skip(5) {
            assert!((r / (-2.0 * t).exp() - 1.0).abs() < 1.5 / k as f64, "k={k} {r}");
        }
    }

    #[test]
    fn sl2_series_coefficient_matches_pochhammer_form() {
        // C_k(ν)/C_0(ν) = (1/2)_k (1/2 + iν)_k / (k! (1 + iν)_k)
        let nu = c(0.8, 0.0);
        let i = Complex64::i();
        let c0 = series_coefficient(0.5, nu, 0).unwrap();
        for k in 1..6u32 {
            let ck = series_coefficient(0.5, nu, k as usize).unwrap();
            let ratio = crate::specfun::pochhammer(c(0.5, 0.0), k) * crate::specfun::pochhammer(0.5 + i * nu, k)
                / (crate::specfun::pochhammer(c(1.0, 0.0), k) * crate::specfun::pochhammer(1.0 + i * nu, k));
            assert!((ck / c0 - ratio).norm() < 1e-13 * ratio.norm(), "k={k}");
        }
    }

    #[test]
    fn calibration_agrees_with_barnes_constant() {
        for p in [1, 3] {
            let s = RankOneSpace::new(p, 0).unwrap();
            let cal = calibrate_bochner(&s).unwrap();
            assert!(cal.relative_defect < 1e-8, "p={p} {cal:?}");
        }
    }

    #[test]
    fn log_singularity_at_the_boundary() {
        let s = RankOneSpace::sl2();
        let fit = singularity_probe(&s, &SpectralParam::unitary(0.0), &[0.4, 0.3, 0.2, 0.15, 0.1, 0.07]).unwrap();
        assert!(fit.c_log > 0.0);
        assert!(fit.fit_quality <= 0.02, "{fit:?}");
        assert!(fit.holdout_error <= 0.03, "{fit:?}");
        // Legendre asymptotics: P_{−1/2}(−cos ε) ≈ (2/π) ln(1/ε) + const
        assert!((fit.c_log - 2.0 / PI).abs() < 0.05, "{}", fit.c_log);
    }

    #[test]
    fn gram_matrix_is_positive() {
        let s = RankOneSpace::sl2();
        let pts = [0.0, 0.3, 1.1, -0.7, 2.2, -1.9, 0.05];
        let e = gram_min_eigenvalue(&s, &SpectralParam::unitary(0.8), &pts).unwrap();
        assert!(e >= -1e-8, "{e}");
    }
}
