//! The master integral `∫₀^∞ t^a (1 + 2t cos θ + t²)^{−b} dt`, the orbit
//! transform `f̃(λ, υ, θ)` of the K-fixed vector and the density
//! `m(λ, υ)` whose Fourier transform is `φ_λ`.
//!
//! Coordinates: `f̃` and `Υ` take `λ` and `υ` in ρ-units (`υ_ρ`), the density
//! itself is a function of the geodesic-dual `υ = ρ·υ_ρ`, so that
//! `φ_λ(a_t) = ∫ e^{−iυt} m(λ, υ) dυ` with `t` geodesic. For `q = 0`
//!
//! ```text
//! m(λ, υ) = Υ(λ, υ_ρ) Υ(−λ, υ_ρ) / Z,    Z = 4π Γ(ρ)² / Γ(2ρ),
//! ```
//!
//! where `Z` is Barnes' first lemma; it does not depend on `λ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::quad::{integrate, try_integrate, GaussLegendre, QuadConfig, QuadError, QuadResult, TryQuadError};
use crate::rankone::{Exactness, RankOneSpace};
use crate::specfun::{gauss_2f1, gamma_ratio, ln_gamma, SpecFunError};
use crate::spectral::SpectralParam;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BochnerError {
    #[error("λ = {0} (ρ-units) is outside the strip |Re λ| < 1")]
    OutOfStrip(Complex64),
    #[error("master integral does not converge: {0}")]
    NonConvergent(&'static str),
    #[error("θ = {0} is not allowed here")]
    BadAngle(f64),
    #[error("decay fit range [{0}, {1}] is too short or starts below 10")]
    InsufficientDecade(f64, f64),
    #[error("λ = {0} (ρ-units) is outside the range of the positivity statement")]
    OutOfRange(Complex64),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

impl From<TryQuadError<BochnerError>> for BochnerError {
    fn from(e: TryQuadError<BochnerError>) -> Self {
        match e {
            TryQuadError::Quad(q) => BochnerError::Quadrature(q),
            TryQuadError::Eval(b) => b,
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Log(1 + e^w)` for `|Im w| < π`, stable for large `|Re w|`.
fn log1p_exp(w: Complex64) -> Complex64 {
    if w.re > 0.0 {
        w + (-w).exp().ln_1p_c()
    } else {
        w.exp().ln_1p_c()
    }
}

trait Ln1p {
    fn ln_1p_c(self) -> Complex64;
}

impl Ln1p for Complex64 {
    /// `Log(1 + z)` keeping accuracy for small `|z|`.
    fn ln_1p_c(self) -> Complex64 {
        if self.norm() < 1e-4 {
            // z − z²/2 + z³/3 − z⁴/4
            let z = self;
            z * (1.0 - z * (0.5 - z * (1.0 / 3.0 - z * 0.25)))
        } else {
            (1.0 + self).ln()
        }
    }
}

fn check_master_preconditions(a: Complex64, b: Complex64, theta: f64) -> Result<(), BochnerError> {
    if !(a.re > -1.0) {
        return Err(BochnerError::NonConvergent("need Re a > -1"));
    }
    if !((2.0 * b - a - 1.0).re > 0.0) {
        return Err(BochnerError::NonConvergent("need Re(2b - a - 1) > 0"));
    }
    if !(0.0..=PI / 2.0).contains(&theta) {
        return Err(BochnerError::BadAngle(theta));
    }
    Ok(())
}

/// Integrand of the master integral along the ray `t = e^{u + iφ}`, with `dt` included.
fn master_ray_log(a: Complex64, b: Complex64, theta: f64, phi: f64, u: f64) -> Complex64 {
    let w = c(u, phi);
    (a + 1.0) * w - b * (log1p_exp(w + c(0.0, theta)) + log1p_exp(w - c(0.0, theta)))
}

/// Window in `u` outside which the ray integrand is below `e^{-45}` of its peak scale.
fn master_window(a: Complex64, b: Complex64) -> (f64, f64) {
    let left_rate = a.re + 1.0;
    let right_rate = (2.0 * b - a - 1.0).re;
    let lo = -(45.0 / left_rate).min(3000.0) - 2.0;
    let hi = (45.0 / right_rate).min(3000.0) + 2.0 + 2.0 * b.norm().ln().max(0.0);
    (lo, hi)
}

/// Quadrature of the master integral. The ray `t ∈ (0, ∞)` is rotated to
/// `t = r e^{iφ}` (allowed for `|φ| < π − θ`, the zeros of the denominator
/// sit at `−e^{±iθ}`), with `φ` picked to minimize `∫|integrand|`, which
/// keeps oscillatory parameters from cancelling away the answer.
pub fn master_integral_quad(a: Complex64, b: Complex64, theta: f64) -> Result<QuadResult<Complex64>, BochnerError> {
    check_master_preconditions(a, b, theta)?;
    let (lo, hi) = master_window(a, b);
    let phi_max = PI - theta - 0.15;
    let gl = GaussLegendre::new(10);
    let panels = ((hi - lo) * 2.0).ceil() as usize;
    let l1 = |phi: f64| -> f64 { gl.composite(|u: f64| master_ray_log(a, b, theta, phi, u).re.exp(), lo, hi, panels) };
    let mut best = (0.0, l1(0.0));
    if a.im != 0.0 || b.im != 0.0 {
        let steps = 24;
        for k in 0..=steps {
            let phi = -phi_max + 2.0 * phi_max * k as f64 / steps as f64;
            let v = l1(phi);
            if v < best.1 {
                best = (phi, v);
            }
        }
    }
    let (phi, scale) = best;
    let cfg = QuadConfig::abs(1e-15 * scale.max(1e-300)).with_rel(1e-12).with_max_intervals(50_000);
    let r = integrate(|u: f64| master_ray_log(a, b, theta, phi, u).exp(), lo, hi, &cfg)?;
    // Truncated tails, bounded by the end values over the decay rates.
    let tail = master_ray_log(a, b, theta, phi, lo).re.exp() / (a.re + 1.0)
        + master_ray_log(a, b, theta, phi, hi).re.exp() / (2.0 * b - a - 1.0).re;
    Ok(QuadResult {
        value: r.value,
        abs_err: r.abs_err + tail,
        evaluations: r.evaluations,
    })
}

/// `Γ(a+1)Γ(2b−a−1)/Γ(2b) · F((a+1)/2, b−(a+1)/2; b+1/2; sin²θ)`.
pub fn master_integral_closed(a: Complex64, b: Complex64, theta: f64) -> Result<Complex64, BochnerError> {
    check_master_preconditions(a, b, theta)?;
    let front = gamma_ratio(&[a + 1.0, 2.0 * b - a - 1.0], &[2.0 * b])?;
    let s = theta.sin();
    let z = if theta == PI / 2.0 { 1.0 } else { s * s };
    let f = gauss_2f1((a + 1.0) / 2.0, b - (a + 1.0) / 2.0, b + 0.5, z)?;
    Ok(front * f)
}

fn check_strip(lambda_rho: Complex64) -> Result<(), BochnerError> {
    if !(lambda_rho.re.abs() < 1.0) || !lambda_rho.im.is_finite() {
        return Err(BochnerError::OutOfStrip(lambda_rho));
    }
    Ok(())
}

/// `ln Υ(λ, υ)` with `Υ(λ, υ) = Γ(r(1+λ−iυ)) Γ(r(1+λ+iυ)) / Γ(2r(1+λ))`, all in ρ-units.
pub fn ln_upsilon(space: &RankOneSpace, lambda_rho: Complex64, upsilon_rho: f64) -> Result<Complex64, BochnerError> {
    let r = space.r();
    let base = r * (1.0 + lambda_rho);
    let iu = c(0.0, r * upsilon_rho);
    Ok(ln_gamma(base - iu)? + ln_gamma(base + iu)? - ln_gamma(2.0 * base)?)
}

pub fn upsilon(space: &RankOneSpace, lambda_rho: Complex64, upsilon_rho: f64) -> Result<Complex64, BochnerError> {
    Ok(ln_upsilon(space, lambda_rho, upsilon_rho)?.exp())
}

/// Orbit transform of the K-fixed vector at cross-section angle `θ`
/// (`λ`, `υ` in ρ-units): `Υ(λ, υ) F(α, β; γ; sin²θ)` with
/// `α = r(1+λ−iυ)/2`, `β = r(1+λ+iυ)/2`, `γ = r(1+λ) + 1/2`.
pub fn f_tilde(space: &RankOneSpace, lambda: &SpectralParam, upsilon_rho: f64, theta: f64) -> Result<Complex64, BochnerError> {
    let lam = space.lambda_rho(lambda);
    f_tilde_rho(space, lam, upsilon_rho, theta)
}

fn f_tilde_rho(space: &RankOneSpace, lam: Complex64, upsilon_rho: f64, theta: f64) -> Result<Complex64, BochnerError> {
    check_strip(lam)?;
    if space.q == 0 && theta != 0.0 {
        return Err(BochnerError::BadAngle(theta));
    }
    if !(0.0..=PI / 2.0).contains(&theta) {
        return Err(BochnerError::BadAngle(theta));
    }
    let ups = upsilon(space, lam, upsilon_rho)?;
    if theta == 0.0 {
        return Ok(ups);
    }
    Ok(ups * hyp_factor(space, lam, upsilon_rho, theta)?)
}

fn hyp_factor(space: &RankOneSpace, lam: Complex64, upsilon_rho: f64, theta: f64) -> Result<Complex64, BochnerError> {
    let r = space.r();
    let alpha = r * (1.0 + lam - c(0.0, upsilon_rho)) / 2.0;
    let beta = r * (1.0 + lam + c(0.0, upsilon_rho)) / 2.0;
    let gamma = r * (1.0 + lam) + 0.5;
    let s = theta.sin();
    let z = if theta == PI / 2.0 { 1.0 } else { s * s };
    Ok(gauss_2f1(alpha, beta, gamma, z)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSectionFamily {
    /// `q = 0`: the single point `θ = 0`.
    Degenerate,
    /// `w(θ) = sin^{p−1}θ cos^{q−1}θ`.
    SphereInduced,
    Custom,
}

/// Quadrature nodes and weights on `[0, π/2]` for the cross-section integral.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSection {
    pub thetas: Vec<f64>,
    pub weights: Vec<f64>,
    pub family: CrossSectionFamily,
}

impl CrossSection {
    pub fn degenerate() -> Self {
        Self {
            thetas: vec![0.0],
            weights: vec![1.0],
            family: CrossSectionFamily::Degenerate,
        }
    }

    /// Default for the space: degenerate when `q = 0`, sphere-induced weight otherwise.
    pub fn for_space(space: &RankOneSpace) -> Self {
        if space.q == 0 {
            return Self::degenerate();
        }
        let (p, q) = (space.p as i32, space.q as i32);
        Self::from_weight(move |th: f64| th.sin().powi(p - 1) * th.cos().powi(q - 1), 6, 8, CrossSectionFamily::SphereInduced)
    }

    /// Composite Gauss–Legendre discretization of a weight on `[0, π/2]`.
    pub fn from_weight<W: Fn(f64) -> f64>(w: W, panels: usize, order: usize, family: CrossSectionFamily) -> Self {
        let gl = GaussLegendre::new(order);
        let mut thetas = Vec::new();
        let mut weights = Vec::new();
        for (x, q) in gl.composite_points(0.0, PI / 2.0, panels) {
            thetas.push(x);
            weights.push((q * w(x)).max(0.0));
        }
        Self { thetas, weights, family }
    }
}

/// `m(λ, ·)` on the geodesic-dual axis.
#[derive(Debug, Clone)]
pub struct BochnerDensity {
    pub space: RankOneSpace,
    pub lambda: SpectralParam,
    /// `λ` in ρ-units.
    pub lambda_rho: Complex64,
    /// `Z` with `∫ m = 1`, i.e. `φ_λ(e) = 1`.
    pub normalization: Complex64,
    pub closed_form: bool,
    pub cross_section: CrossSection,
}

impl BochnerDensity {
    pub fn experimental(&self) -> bool {
        self.space.exactness() == Exactness::Experimental
    }

    /// Unnormalized `Υ(λ)Υ(−λ)·H` in log form, `υ` geodesic-dual.
    fn ln_unnormalized(&self, upsilon: f64) -> Result<Complex64, BochnerError> {
        let u = upsilon / self.space.rho();
        let lam = self.lambda_rho;
        let mut acc = ln_upsilon(&self.space, lam, u)? + ln_upsilon(&self.space, -lam, u)?;
        if !self.closed_form {
            acc += self.cross_section_sum(u)?.ln();
        }
        Ok(acc)
    }

    /// `H = Σ_j w_j F_j(λ) conj F_j(λ')`.
    fn cross_section_sum(&self, upsilon_rho: f64) -> Result<Complex64, BochnerError> {
        let lam = self.lambda_rho;
        let lam_prime = -lam.conj();
        let mut h = c(0.0, 0.0);
        for (th, w) in self.cross_section.thetas.iter().zip(&self.cross_section.weights) {
            let f = hyp_factor(&self.space, lam, upsilon_rho, *th)?;
            let g = hyp_factor(&self.space, lam_prime, upsilon_rho, *th)?;
            h += f * g.conj() * *w;
        }
        Ok(h)
    }

    /// `ln m(λ, υ)`.
    pub fn ln_eval(&self, upsilon: f64) -> Result<Complex64, BochnerError> {
        Ok(self.ln_unnormalized(upsilon)? - self.normalization.ln())
    }

    /// `m(λ, υ)`; real for `λ` on the unitary axis or real in ρ-units.
    pub fn eval(&self, upsilon: f64) -> Result<Complex64, BochnerError> {
        Ok(self.ln_eval(upsilon)?.exp())
    }

    /// `∫ m dυ` by adaptive quadrature, 1 by construction.
    pub fn total_mass(&self) -> Result<QuadResult<Complex64>, BochnerError> {
        let cfg = QuadConfig::abs(1e-14).with_rel(1e-13);
        let half = try_integrate(|u: f64| self.eval(u), 0.0, 60.0, &cfg)?;
        Ok(QuadResult {
            value: half.value * 2.0,
            abs_err: half.abs_err * 2.0,
            evaluations: half.evaluations,
        })
    }
}

/// `Z = 4π Γ(ρ)²/Γ(2ρ)`.
pub fn closed_normalization(space: &RankOneSpace) -> f64 {
    let rho = space.rho();
    let ln = 2.0 * ln_gamma(c(rho, 0.0)).map(|v| v.re).unwrap_or(f64::NAN) - ln_gamma(c(2.0 * rho, 0.0)).map(|v| v.re).unwrap_or(f64::NAN);
    4.0 * PI * ln.exp()
}

/// The density for `λ` in the strip, normalized to unit mass.
pub fn bochner_density(space: &RankOneSpace, lambda: &SpectralParam) -> Result<BochnerDensity, BochnerError> {
    bochner_density_with(space, lambda, CrossSection::for_space(space))
}

/// Same as [`bochner_density`] with an explicit cross-section discretization (`q > 0`).
pub fn bochner_density_with(space: &RankOneSpace, lambda: &SpectralParam, cross_section: CrossSection) -> Result<BochnerDensity, BochnerError> {
    let lam = space.lambda_rho(lambda);
    check_strip(lam)?;
    let closed_form = space.q == 0;
    let mut d = BochnerDensity {
        space: *space,
        lambda: *lambda,
        lambda_rho: lam,
        normalization: c(closed_normalization(space), 0.0),
        closed_form,
        cross_section: if closed_form { CrossSection::degenerate() } else { cross_section },
    };
    if !closed_form {
        let cfg = QuadConfig::abs(1e-15).with_rel(1e-12);
        let half = try_integrate(|u: f64| Ok::<_, BochnerError>(d.ln_unnormalized(u)?.exp()), 0.0, 80.0, &cfg)?;
        d.normalization = half.value * 2.0;
    }
    Ok(d)
}

/// `m = Υ(λ, υ) Υ(−λ, υ) h(λ, υ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factorization {
    pub upsilon_plus: Complex64,
    pub upsilon_minus: Complex64,
    pub h: Complex64,
}

impl Factorization {
    pub fn product(&self) -> Complex64 {
        self.upsilon_plus * self.upsilon_minus * self.h
    }
}

/// Factorization at geodesic-dual `υ`.
pub fn bochner_factorization(density: &BochnerDensity, upsilon_geo: f64) -> Result<Factorization, BochnerError> {
    let u = upsilon_geo / density.space.rho();
    let lam = density.lambda_rho;
    let upsilon_plus = upsilon(&density.space, lam, u)?;
    let upsilon_minus = upsilon(&density.space, -lam, u)?;
    let h = if density.closed_form {
        1.0 / density.normalization
    } else {
        density.cross_section_sum(u)? / density.normalization
    };
    Ok(Factorization {
        upsilon_plus,
        upsilon_minus,
        h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub rate: f64,
    pub r_squared: f64,
    pub intercept: f64,
}

/// Least-squares slope of `ln|m(υ)| − (ρ − 1) ln(ρ²/4 + υ²/4)` on `[υ₀, υ₁]`.
/// The correction is the power of `υ` in the Stirling asymptotics of the Γ
/// product, so for `q = 0` the remaining profile is linear with slope `−π`.
/// Requires `υ₀ ≥ 10` and `υ₁ ≥ 2υ₀`.
pub fn fit_decay_rate(density: &BochnerDensity, range: (f64, f64)) -> Result<DecayFit, BochnerError> {
    let (u0, u1) = range;
    if !(u0 >= 10.0) || !(u1 >= 2.0 * u0) || !u1.is_finite() {
        return Err(BochnerError::InsufficientDecade(u0, u1));
    }
    let rho = density.space.rho();
    let n = 201;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for k in 0..n {
        let u = u0 + (u1 - u0) * k as f64 / (n - 1) as f64;
        let lm = density.ln_eval(u)?.re;
        xs.push(u);
        ys.push(lm - (rho - 1.0) * (rho * rho / 4.0 + u * u / 4.0).ln());
    }
    let (slope, intercept, r2) = linear_fit(&xs, &ys);
    Ok(DecayFit {
        rate: -slope,
        r_squared: r2,
        intercept,
    })
}

/// Ordinary least squares `y ≈ slope·x + intercept`, with `R²`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}

#[derive(Debug, Clone, PartialEq)]
pub enum PositivityStatus {
    /// `m ≥ −1e-10` on the whole grid.
    Positive,
    /// Some sample is below `−1e-10`.
    Negative,
    /// `λ = ±1` (ρ-units): the measure is a multiple of the Dirac mass at 0.
    DiracDegenerate,
    /// Outside the hypotheses; only the sign pattern of `Re m` is reported.
    Unconstrained { signs: Vec<i8> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositivityReport {
    pub status: PositivityStatus,
    pub min_value: f64,
    pub max_imag: f64,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        matches!(self.status, PositivityStatus::Positive | PositivityStatus::DiracDegenerate)
    }
}

pub const POSITIVITY_FLOOR: f64 = -1e-10;

/// Grid check of `m(λ, υ) ≥ 0` (`υ` geodesic-dual).
pub fn positivity_check(space: &RankOneSpace, lambda: &SpectralParam, grid: &[f64]) -> Result<PositivityReport, BochnerError> {
    let lam = space.lambda_rho(lambda);
    let tol = 1e-12;
    let imaginary = lam.re.abs() <= tol;
    let real = lam.im.abs() <= tol;
    if real && ((lam.re.abs() - 1.0).abs() <= tol) {
        return Ok(PositivityReport {
            status: PositivityStatus::DiracDegenerate,
            min_value: 0.0,
            max_imag: 0.0,
        });
    }
    if real && lam.re.abs() > 1.0 {
        return Err(BochnerError::OutOfRange(lam));
    }
    let d = bochner_density(space, lambda)?;
    let mut min_value = f64::INFINITY;
    let mut max_imag: f64 = 0.0;
    let mut signs = Vec::with_capacity(grid.len());
    for u in grid {
        let v = d.eval(*u)?;
        min_value = min_value.min(v.re);
        max_imag = max_imag.max(v.im.abs());
        signs.push(if v.re > 0.0 {
            1
        } else if v.re < 0.0 {
            -1
        } else {
            0
        });
    }
    let status = if !(imaginary || real) {
        PositivityStatus::Unconstrained { signs }
    } else if min_value >= POSITIVITY_FLOOR {
        PositivityStatus::Positive
    } else {
        PositivityStatus::Negative
    };
    Ok(PositivityReport {
        status,
        min_value,
        max_imag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam_rho(re: f64, im: f64) -> SpectralParam {
        SpectralParam::rho(c(re, im))
    }

    #[test]
    fn master_integral_trivial_values() {
        let q = master_integral_quad(c(0.0, 0.0), c(1.0, 0.0), PI / 2.0).unwrap();
        assert!((q.value - c(PI / 2.0, 0.0)).norm() < 1e-12);
        let q = master_integral_quad(c(0.0, 0.0), c(1.0, 0.0), 0.0).unwrap();
        assert!((q.value - c(1.0, 0.0)).norm() < 1e-12);
        let cl = master_integral_closed(c(0.0, 0.0), c(1.0, 0.0), PI / 2.0).unwrap();
        assert!((cl - c(PI / 2.0, 0.0)).norm() < 1e-13);
        let cl = master_integral_closed(c(0.0, 0.0), c(1.0, 0.0), 0.0).unwrap();
        assert!((cl - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn master_integral_pairing() {
        for (a, b, th) in [
            (c(0.5, 0.0), c(1.3, 0.0), PI / 4.0),
            (c(-0.4, 2.0), c(1.1, -3.0), PI / 3.0),
            (c(1.5, 5.0), c(2.9, 5.0), PI / 6.0),
            (c(0.2, -4.0), c(0.9, 4.5), PI / 2.0),
        ] {
            let q = master_integral_quad(a, b, th).unwrap();
            let cl = master_integral_closed(a, b, th).unwrap();
            let rel = (q.value - cl).norm() / cl.norm();
            assert!(rel < 1e-8, "a={a} b={b} th={th}: rel {rel:e} quad {} closed {cl}", q.value);
        }
    }

    #[test]
    fn master_integral_rejects_divergent_parameters() {
        assert!(master_integral_quad(c(-1.0, 0.0), c(1.0, 0.0), 0.0).is_err());
        assert!(master_integral_closed(c(1.0, 0.0), c(1.0, 0.0), 0.0).is_err());
        assert!(master_integral_closed(c(0.0, 0.0), c(1.0, 0.0), 2.0).is_err());
    }

    #[test]
    fn f_tilde_is_gamma_ratio_for_q_zero() {
        let s = RankOneSpace::sl2();
        let lam = lam_rho(0.2, 0.5);
        let v = f_tilde(&s, &lam, 1.7, 0.0).unwrap();
        let r = s.r();
        let l = c(0.2, 0.5);
        let exact = gamma_ratio(&[r * (1.0 + l - c(0.0, 1.7)), r * (1.0 + l + c(0.0, 1.7))], &[2.0 * r * (1.0 + l)]).unwrap();
        assert!((v - exact).norm() < 1e-14 * exact.norm());
        assert!(f_tilde(&s, &lam, 1.0, 0.3).is_err());
        assert!(matches!(f_tilde(&s, &lam_rho(1.0, 0.0), 1.0, 0.0), Err(BochnerError::OutOfStrip(_))));
    }

    #[test]
    fn f_tilde_matches_master_quadrature() {
        for (p, q, th) in [(1, 0, 0.0), (2, 0, 0.0), (2, 1, 0.7), (4, 1, PI / 2.0), (4, 3, 0.3)] {
            let s = RankOneSpace::new(p, q).unwrap();
            for (lr, li, u) in [(0.0, 0.6, 1.3), (0.4, 0.0, -2.0), (-0.3, 0.2, 0.5)] {
                let lam = c(lr, li);
                let v = f_tilde(&s, &lam_rho(lr, li), u, th).unwrap();
                let r = s.r();
                let a = r * (1.0 + lam - c(0.0, u)) - 1.0;
                let b = r * (1.0 + lam);
                let quad = master_integral_quad(a, b, th).unwrap().value;
                assert!((v - quad).norm() < 1e-8 * v.norm(), "p={p} q={q} {lam} {u}: {v} vs {quad}");
            }
        }
    }

    #[test]
    fn f_tilde_conjugation() {
        let s = RankOneSpace::new(2, 1).unwrap();
        let l = c(0.3, -0.4);
        let a = f_tilde(&s, &lam_rho(l.re, l.im), 1.2, 0.9).unwrap();
        let b = f_tilde(&s, &lam_rho(l.re, -l.im), -1.2, 0.9).unwrap();
        assert!((a.conj() - b).norm() < 1e-14 * a.norm());
    }

    #[test]
    fn closed_normalization_values() {
        assert!((closed_normalization(&RankOneSpace::sl2()) - 4.0 * PI * PI).abs() < 1e-12);
        // ρ = 1: Γ(1)²/Γ(2) = 1
        assert!((closed_normalization(&RankOneSpace::new(2, 0).unwrap()) - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn density_is_even_weyl_symmetric_and_normalized() {
        let s = RankOneSpace::sl2();
        for lam in [lam_rho(0.0, 0.7), lam_rho(0.5, 0.0), lam_rho(0.3, 0.4)] {
            let d = bochner_density(&s, &lam).unwrap();
            let dw = bochner_density(&s, &lam.weyl()).unwrap();
            for u in [0.0, 0.4, 3.0, 12.0] {
                let a = d.eval(u).unwrap();
                assert!((a - d.eval(-u).unwrap()).norm() <= 1e-12 * a.norm());
                assert!((a - dw.eval(u).unwrap()).norm() <= 1e-12 * a.norm());
            }
        }
        for nu in [0.0, 0.5, 1.0, 2.0, 5.0] {
            let d = bochner_density(&s, &SpectralParam::unitary(nu)).unwrap();
            let m = d.total_mass().unwrap().value;
            assert!((m - 1.0).norm() < 1e-10, "nu={nu}: mass {m}");
        }
    }

    #[test]
    fn sl2_density_at_zero_is_gamma_modulus() {
        let s = RankOneSpace::sl2();
        let d = bochner_density(&s, &lam_rho(0.0, 0.0)).unwrap();
        for u in [0.3, 2.0, 7.0] {
            let g = crate::specfun::gamma(c(0.25, u / 2.0)).unwrap();
            let expected = g.norm_sqr().powi(2) / (PI * 4.0 * PI * PI);
            let got = d.eval(u).unwrap().re;
            assert!((got - expected).abs() < 1e-13 * expected, "{got} {expected}");
        }
    }

    #[test]
    fn factorization_reconstructs_density() {
        let s = RankOneSpace::sl2();
        let d = bochner_density(&s, &lam_rho(0.2, 0.6)).unwrap();
        let h0 = bochner_factorization(&d, 0.0).unwrap().h;
        for u in [-20.0, -3.0, 0.5, 9.0, 20.0] {
            let f = bochner_factorization(&d, u).unwrap();
            let m = d.eval(u).unwrap();
            assert!((f.product() - m).norm() < 1e-12 * m.norm());
            assert!((f.h - h0).norm() < 1e-10 * h0.norm());
        }
    }

    #[test]
    fn experimental_space_h_is_finite_and_smooth() {
        let s = RankOneSpace::new(2, 1).unwrap();
        let d = bochner_density(&s, &lam_rho(0.0, 0.5)).unwrap();
        assert!(d.experimental());
        // h grows exponentially in |υ|; smoothness is judged on ln h
        let logs: Vec<Complex64> = (0..=40)
            .map(|k| {
                let h = bochner_factorization(&d, -10.0 + 0.5 * k as f64).unwrap().h;
                assert!(h.re.is_finite() && h.im.is_finite() && h.norm() > 0.0);
                h.ln()
            })
            .collect();
        for w in logs.windows(3) {
            let second = w[0] - 2.0 * w[1] + w[2];
            assert!(second.norm() < 0.3, "{w:?}");
        }
        let m = d.total_mass().unwrap().value;
        assert!((m - 1.0).norm() < 1e-8, "{m}");
    }

    #[test]
    fn decay_rate_is_pi() {
        for p in [1, 2, 3] {
            let s = RankOneSpace::new(p, 0).unwrap();
            let d = bochner_density(&s, &lam_rho(0.0, 0.0)).unwrap();
            let fit = fit_decay_rate(&d, (10.0, 50.0)).unwrap();
            assert!((fit.rate / PI - 1.0).abs() < 0.01, "p={p} rate={}", fit.rate);
            assert!(fit.r_squared >= 0.999);
        }
        let d = bochner_density(&RankOneSpace::sl2(), &lam_rho(0.0, 0.0)).unwrap();
        assert!(matches!(fit_decay_rate(&d, (10.0, 15.0)), Err(BochnerError::InsufficientDecade(..))));
        assert!(fit_decay_rate(&d, (5.0, 50.0)).is_err());
    }

    #[test]
    fn positivity_statuses() {
        let s = RankOneSpace::sl2();
        let grid: Vec<f64> = (0..=160).map(|k| -40.0 + 0.5 * k as f64).collect();
        let r = positivity_check(&s, &lam_rho(0.0, 0.7), &grid).unwrap();
        assert_eq!(r.status, PositivityStatus::Positive);
        let r = positivity_check(&s, &lam_rho(0.5, 0.0), &grid).unwrap();
        assert_eq!(r.status, PositivityStatus::Positive);
        let r = positivity_check(&s, &lam_rho(1.0, 0.0), &grid).unwrap();
        assert_eq!(r.status, PositivityStatus::DiracDegenerate);
        let r = positivity_check(&s, &lam_rho(0.5, 0.5), &grid).unwrap();
        assert!(matches!(r.status, PositivityStatus::Unconstrained { .. }));
        assert!(positivity_check(&s, &lam_rho(1.5, 0.0), &grid).is_err());
    }
}
