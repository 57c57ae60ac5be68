//! Spherical analysis on `SL(2, R)/SO(2)` in the geodesic coordinate: the
//! c-function, spherical transform and inversion, the Abel transform and its
//! Fourier identity, and the spectral Abel transform built on the Bochner
//! densities.
//!
//! Normalizations: `φ_λ` is the real-`λ` spherical function (`ν = λ`), the
//! radial measure is `κ_J sinh t dt` and `c(λ) = κ Γ(iλ)/Γ(1/2 + iλ)` with
//! `κ = 1/√π` the leading Harish-Chandra constant. With these
//!
//! ```text
//! f̃(λ) = κ_J ∫₀^∞ f(t) φ_λ(t) sinh t dt,   f(t) = (κ²/κ_J) ∫₀^∞ f̃(λ) φ_λ(t) |c(λ)|⁻² dλ,
//! ```
//!
//! and `κ_J = 2π` is the one constant that makes `f̃ = F̂_f` hold; see
//! [`calibrate_kappa_j`].

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::bochner::{bochner_density, BochnerError};
use crate::quad::{integrate, GaussLegendre, QuadConfig, QuadError};
use crate::rankone::{spherical_oracle, RankOneError, RankOneSpace};
use crate::specfun::{gamma, gauss_2f1, SpecFunError};
use crate::spectral::SpectralParam;
use crate::spherical::hc_kappa;

/// Radial Jacobian constant of `κ_J sinh t dt`.
pub const KAPPA_J: f64 = 2.0 * PI;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("c(λ) has a pole at λ = 0")]
    PoleAtZero,
    #[error("spectral panel {panel} too wide for support bound {bound} (need panel·2R <= {limit})")]
    GridTooCoarse { panel: f64, bound: f64, limit: f64 },
    #[error("profile not negligible at t = {0}; cannot truncate the tail")]
    TailTruncation(f64),
    #[error("spectral profile decays too slowly: relative size {0:e} at the last node")]
    InsufficientDecay(f64),
    #[error("spectral profile is not Weyl-even")]
    NotEven,
    #[error("empty grid")]
    EmptyGrid,
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Bochner(#[from] BochnerError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    RankOne(#[from] RankOneError),
}

/// `c(λ) = κ Γ(iλ)/Γ(1/2 + iλ)`.
pub fn c_function(lambda: f64) -> Result<Complex64, TransformError> {
    if lambda == 0.0 {
        return Err(TransformError::PoleAtZero);
    }
    let i = Complex64::i();
    let kappa = hc_kappa(&RankOneSpace::sl2());
    Ok(kappa * gamma(i * lambda)? / gamma(0.5 + i * lambda)?)
}

/// `|c(λ)|⁻² = κ⁻² λ tanh(πλ)`.
pub fn plancherel_density(lambda: f64) -> Result<f64, TransformError> {
    if lambda == 0.0 {
        return Err(TransformError::PoleAtZero);
    }
    let kappa = hc_kappa(&RankOneSpace::sl2());
    Ok(lambda * (PI * lambda).tanh() / (kappa * kappa))
}

/// Plancherel weight extended by its limit 0 at the origin.
fn plancherel_weight(lambda: f64) -> f64 {
    if lambda == 0.0 {
        0.0
    } else {
        plancherel_density(lambda).unwrap_or(0.0)
    }
}

/// `φ_λ(t) = cosh(t/2)^{−2a} ₂F₁(a, a; 1; tanh²(t/2))`, `a = 1/2 + iλ`, while
/// the series terms stay below `e^{12}`; beyond that (large `λ√z`) the
/// Harish-Chandra expansion, whose terms do not cancel. The integral oracle
/// covers the degenerate connection case.
pub fn phi_kernel(lambda: f64, t: f64) -> Result<f64, TransformError> {
    let t = t.abs();
    if t == 0.0 {
        return Ok(1.0);
    }
    let th = (t / 2.0).tanh();
    if 2.0 * lambda.abs() * th > 12.0 {
        return phi_kernel_expansion(lambda, t);
    }
    let a = Complex64::new(0.5, lambda);
    // ln cosh(t/2) without overflow
    let ln_cosh = t / 2.0 + (-t).exp().ln_1p() - std::f64::consts::LN_2;
    match gauss_2f1(a, a, Complex64::new(1.0, 0.0), th * th) {
        Ok(f) => Ok(((-2.0 * a * ln_cosh).exp() * f).re),
        Err(SpecFunError::DegenerateConnection) => {
            Ok(spherical_oracle(&RankOneSpace::sl2(), &SpectralParam::unitary(lambda), t)?.value.re)
        }
        Err(e) => Err(e.into()),
    }
}

/// `φ_λ(t) = 2 Re[c(λ) e^{(iλ − 1/2)t} Σ_k Γ_k e^{−2kt}]` with
/// `Γ_{k+1}/Γ_k = (1/2 − iλ + k)(1/2 + k) / ((k + 1)(k + 1 − iλ))`.
fn phi_kernel_expansion(lambda: f64, t: f64) -> Result<f64, TransformError> {
    let i = Complex64::i();
    let mut term = c_function(lambda)? * ((i * lambda - 0.5) * t).exp();
    let decay = (-2.0 * t).exp();
    let mut sum = term;
    for k in 0..5000 {
        let kf = k as f64;
        term *= (0.5 - i * lambda + kf) * (0.5 + kf) / ((kf + 1.0) * (kf + 1.0 - i * lambda)) * decay;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    Ok(2.0 * sum.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    Compact,
    SchwartzLike,
}

/// A K-biinvariant function as a profile in the geodesic radius.
#[derive(Clone)]
pub struct RadialFunction {
    profile: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub support_bound: f64,
    pub decay_class: DecayClass,
}

impl std::fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialFunction")
            .field("support_bound", &self.support_bound)
            .field("decay_class", &self.decay_class)
            .finish()
    }
}

/// `1 − smootherstep`: C² from 1 down to 0 on `[0, 1]`.
fn taper(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x >= 1.0 {
        0.0
    } else {
        1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x)
    }
}

pub const TAPER_WIDTH: f64 = 0.5;

impl RadialFunction {
    pub fn compact<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F, support_bound: f64) -> Self {
        Self {
            profile: Arc::new(f),
            support_bound,
            decay_class: DecayClass::Compact,
        }
    }

    pub fn schwartz<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Self {
            profile: Arc::new(f),
            support_bound: f64::INFINITY,
            decay_class: DecayClass::SchwartzLike,
        }
    }

    pub fn zero() -> Self {
        Self::compact(|_| 0.0, 1.0)
    }

    /// `exp(−(t/σ)²)` cut at `6σ`, tapered over the last [`TAPER_WIDTH`].
    pub fn truncated_gaussian(sigma: f64) -> Self {
        let r = 6.0 * sigma;
        Self::compact(
            move |t: f64| {
                let t = t.abs();
                (-(t / sigma).powi(2)).exp() * taper((t - (r - TAPER_WIDTH)) / TAPER_WIDTH)
            },
            r,
        )
    }

    /// The three widths used throughout the verification suites.
    pub fn test_family() -> Vec<(f64, RadialFunction)> {
        [0.5, 1.0, 1.5].into_iter().map(|s| (s, Self::truncated_gaussian(s))).collect()
    }

    /// `αf + βg`.
    pub fn combine(alpha: f64, f: &RadialFunction, beta: f64, g: &RadialFunction) -> Self {
        let (fc, gc) = (f.clone(), g.clone());
        let compact = f.decay_class == DecayClass::Compact && g.decay_class == DecayClass::Compact;
        let profile = Arc::new(move |t: f64| alpha * fc.eval(t) + beta * gc.eval(t));
        Self {
            profile,
            support_bound: f.support_bound.max(g.support_bound),
            decay_class: if compact { DecayClass::Compact } else { DecayClass::SchwartzLike },
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.abs();
        if self.decay_class == DecayClass::Compact && t >= self.support_bound {
            return 0.0;
        }
        (self.profile)(t)
    }

    /// Radius beyond which the profile is treated as zero.
    pub fn effective_bound(&self) -> Result<f64, TransformError> {
        if self.decay_class == DecayClass::Compact {
            return Ok(self.support_bound);
        }
        let peak = (0..=400).map(|k| self.eval(0.05 * k as f64).abs()).fold(0.0, f64::max);
        let mut t = 1.0;
        while t <= 200.0 {
            // the Jacobian grows like e^t; the tail must beat it
            let tail = (0..=10).map(|k| self.eval(t + 0.1 * k as f64).abs()).fold(0.0, f64::max);
            if tail * (t + 1.0).exp() <= 1e-15 * peak.max(f64::MIN_POSITIVE) {
                return Ok(t);
            }
            t += 1.0;
        }
        Err(TransformError::TailTruncation(200.0))
    }
}

/// Half-line Gauss–Legendre rule `[0, Λ]` on the unitary axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panel: f64,
}

const SPECTRAL_ORDER: usize = 10;
/// GL10 resolves `e^{iωλ}` over a panel of width `w` while `w·ω <= 6`.
const NYQUIST_LIMIT: f64 = 6.0;

impl SpectralRule {
    pub fn new(lambda_max: f64, panel: f64) -> Result<Self, TransformError> {
        if !(lambda_max > 0.0 && panel > 0.0) {
            return Err(TransformError::EmptyGrid);
        }
        let panels = (lambda_max / panel).ceil() as usize;
        let panel = lambda_max / panels as f64;
        let gl = GaussLegendre::new(SPECTRAL_ORDER);
        let (nodes, weights) = gl.composite_points(0.0, lambda_max, panels).into_iter().unzip();
        Ok(Self { nodes, weights, panel })
    }

    /// Cutoff from the decay of `f̃` (relative `1e-12`), panel width from the support.
    pub fn auto(f: &RadialFunction) -> Result<Self, TransformError> {
        let bound = f.effective_bound()?;
        let scale = RadialQuadrature::new(bound, 1.0).transform_at(f, 0.0)?.abs().max(f64::MIN_POSITIVE);
        let mut lambda_max = 5.0;
        while lambda_max < 200.0 {
            let tq = RadialQuadrature::new(bound, lambda_max + 4.0);
            let tail = (0..4).map(|k| tq.transform_at(f, lambda_max + k as f64)).collect::<Result<Vec<_>, _>>()?;
            if tail.iter().all(|v| v.abs() <= 1e-12 * scale) {
                break;
            }
            lambda_max += 5.0;
        }
        let panel = (NYQUIST_LIMIT / (2.0 * bound) * 0.9).min(0.25);
        Self::new(lambda_max + 2.0, panel)
    }

    fn check_nyquist(&self, bound: f64) -> Result<(), TransformError> {
        if self.panel * 2.0 * bound > NYQUIST_LIMIT {
            return Err(TransformError::GridTooCoarse {
                panel: self.panel,
                bound,
                limit: NYQUIST_LIMIT,
            });
        }
        Ok(())
    }

    pub fn max(&self) -> f64 {
        self.nodes.last().copied().unwrap_or(0.0)
    }
}

/// Composite GL16 on `[0, R]`, panel width tied to the highest frequency.
struct RadialQuadrature {
    points: Vec<(f64, f64)>,
}

impl RadialQuadrature {
    fn new(bound: f64, max_freq: f64) -> Self {
        let h = (3.0 / max_freq.max(1.0)).min(0.25);
        let panels = (bound / h).ceil().max(1.0) as usize;
        Self {
            points: GaussLegendre::new(16).composite_points(0.0, bound, panels),
        }
    }

    fn transform_at(&self, f: &RadialFunction, lambda: f64) -> Result<f64, TransformError> {
        let mut acc = 0.0;
        for (t, w) in &self.points {
            acc += w * f.eval(*t) * phi_kernel(lambda, *t)? * t.sinh();
        }
        Ok(KAPPA_J * acc)
    }
}

/// Samples of a spectral function on the half-line rule of the unitary axis;
/// `even` records that the negative half is the mirror image.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProfile {
    pub rule: SpectralRule,
    pub values: Vec<Complex64>,
    pub even: bool,
}

impl SpectralProfile {
    fn ensure_even(&self) -> Result<(), TransformError> {
        if self.even {
            Ok(())
        } else {
            Err(TransformError::NotEven)
        }
    }

    fn decay_ratio(&self) -> f64 {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        self.values.iter().rev().take(SPECTRAL_ORDER).map(|v| v.norm()).fold(0.0, f64::max) / peak
    }
}

/// `f̃(λ) = κ_J ∫₀^R f(t) φ_λ(t) sinh t dt` on the rule's nodes.
pub fn spherical_transform(f: &RadialFunction, rule: &SpectralRule) -> Result<SpectralProfile, TransformError> {
    let bound = f.effective_bound()?;
    rule.check_nyquist(bound)?;
    let tq = RadialQuadrature::new(bound, rule.max());
    let values = rule
        .nodes
        .iter()
        .map(|l| tq.transform_at(f, *l).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>, _>>()?;
    // Weyl evenness: the kernel is φ_λ = φ_{−λ}, confirmed on a few nodes
    let mut even = true;
    for k in [0, rule.nodes.len() / 2, rule.nodes.len() - 1] {
        let back = tq.transform_at(f, -rule.nodes[k])?;
        if (back - values[k].re).abs() > 1e-10 * values[k].norm().max(1e-300) + 1e-300 {
            even = false;
        }
    }
    Ok(SpectralProfile {
        rule: rule.clone(),
        values,
        even,
    })
}

/// `f̃` at arbitrary real `λ`, without an inversion rule attached.
pub fn spherical_transform_at(f: &RadialFunction, lambdas: &[f64]) -> Result<Vec<f64>, TransformError> {
    let bound = f.effective_bound()?;
    let max_freq = lambdas.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    let tq = RadialQuadrature::new(bound, max_freq);
    lambdas.iter().map(|l| tq.transform_at(f, *l)).collect()
}

/// `f(t) = (κ²/κ_J) ∫₀^Λ f̃(λ) φ_λ(t) |c(λ)|⁻² dλ` at each `t`.
pub fn inverse_spherical(profile: &SpectralProfile, t_grid: &[f64]) -> Result<Vec<f64>, TransformError> {
    profile.ensure_even()?;
    let kappa = hc_kappa(&RankOneSpace::sl2());
    let pre = kappa * kappa / KAPPA_J;
    let weights: Vec<f64> = profile
        .rule
        .nodes
        .iter()
        .zip(&profile.rule.weights)
        .map(|(l, w)| w * plancherel_weight(*l))
        .collect();
    t_grid
        .iter()
        .map(|t| {
            let mut acc = 0.0;
            for ((l, w), v) in profile.rule.nodes.iter().zip(&weights).zip(&profile.values) {
                acc += w * v.re * phi_kernel(*l, *t)?;
            }
            Ok(pre * acc)
        })
        .collect()
}

/// `acosh(1 + u)` accurate for small `u`.
fn acosh1p(u: f64) -> f64 {
    (u + (u * (u + 2.0)).sqrt()).ln_1p()
}

/// `F_f(t) = e^{t/2} ∫ f(d(t, x)) dx`, `cosh d = cosh t + e^t x²/2`; after
/// `y = e^{t/2} x` this is `∫ f(acosh(cosh t + y²/2)) dy`.
pub fn abel_transform(f: &RadialFunction, t_grid: &[f64]) -> Result<Vec<f64>, TransformError> {
    let bound = f.effective_bound()?;
    let cfg = QuadConfig::abs(1e-15).with_rel(1e-13).with_max_intervals(20_000);
    t_grid
        .iter()
        .map(|t| {
            let t = t.abs();
            if t >= bound {
                return Ok(0.0);
            }
            // cosh R − cosh t = 2 sinh((R+t)/2) sinh((R−t)/2)
            let gap = 2.0 * ((bound + t) / 2.0).sinh() * ((bound - t) / 2.0).sinh();
            let y_max = (2.0 * gap).sqrt();
            let base = 2.0 * (t / 2.0).sinh().powi(2);
            let r = integrate(|y: f64| f.eval(acosh1p(base + y * y / 2.0)), 0.0, y_max, &cfg)?;
            Ok(2.0 * r.value)
        })
        .collect()
}

/// `F̂(λ) = ∫_R F(t) e^{iλt} dt` for even `F` sampled on a radial quadrature.
fn even_fourier(points: &[(f64, f64)], values: &[f64], lambda: f64) -> f64 {
    2.0 * points.iter().zip(values).map(|((t, w), v)| w * v * (lambda * t).cos()).sum::<f64>()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbelFourier {
    /// `max |f̃ − F̂_f| / max |f̃|` over the rule.
    pub max_defect: f64,
    pub spherical: Vec<f64>,
    pub fourier: Vec<f64>,
}

/// Quadrature nodes `(t, w)` with `F_f` at each node.
type AbelSamples = (Vec<(f64, f64)>, Vec<f64>);

fn abel_on_quadrature(f: &RadialFunction, max_freq: f64) -> Result<AbelSamples, TransformError> {
    let bound = f.effective_bound()?;
    let points = RadialQuadrature::new(bound, max_freq).points;
    let ts: Vec<f64> = points.iter().map(|p| p.0).collect();
    let values = abel_transform(f, &ts)?;
    Ok((points, values))
}

/// Both sides of `f̃ = F̂_f` on the rule's nodes.
pub fn abel_fourier_identity(f: &RadialFunction, rule: &SpectralRule) -> Result<AbelFourier, TransformError> {
    let spherical: Vec<f64> = spherical_transform(f, rule)?.values.iter().map(|v| v.re).collect();
    let (points, abel) = abel_on_quadrature(f, rule.max())?;
    let fourier: Vec<f64> = rule.nodes.iter().map(|l| even_fourier(&points, &abel, *l)).collect();
    let scale = spherical.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let worst = spherical.iter().zip(&fourier).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let max_defect = if scale == 0.0 { worst } else { worst / scale };
    Ok(AbelFourier {
        max_defect,
        spherical,
        fourier,
    })
}

/// Pairings `⟨F_f, cos(λ·)⟩_A` against `⟨f, φ_λ⟩` (radial measure), max relative defect.
pub fn duality_check(f: &RadialFunction, lambdas: &[f64]) -> Result<f64, TransformError> {
    let bound = f.effective_bound()?;
    let max_freq = lambdas.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    let tq = RadialQuadrature::new(bound, max_freq);
    let (points, abel) = abel_on_quadrature(f, max_freq)?;
    let mut worst: f64 = 0.0;
    for l in lambdas {
        let on_a = even_fourier(&points, &abel, *l);
        let on_g = tq.transform_at(f, *l)?;
        worst = worst.max((on_a - on_g).abs() / on_g.abs().max(1e-300));
    }
    Ok(worst)
}

/// `F̂_f(λ) / ∫ f φ_λ sinh t dt` at the reference `exp(−t²)` and `λ = 1/2`:
/// the Jacobian constant forced by the Abel identity.
pub fn calibrate_kappa_j() -> Result<f64, TransformError> {
    let f = RadialFunction::truncated_gaussian(1.0);
    let lambda = 0.5;
    let tq = RadialQuadrature::new(f.support_bound, 4.0);
    let unnormalized = tq.transform_at(&f, lambda)? / KAPPA_J;
    let (points, abel) = abel_on_quadrature(&f, 4.0)?;
    Ok(even_fourier(&points, &abel, lambda) / unnormalized)
}

/// `F^s(υ) = (κ²/κ_J) ∫₀^Λ f̃(λ) m(λ, υ) |c(λ)|⁻² dλ`.
pub fn spectral_ff(profile: &SpectralProfile, upsilons: &[f64]) -> Result<Vec<f64>, TransformError> {
    profile.ensure_even()?;
    let ratio = profile.decay_ratio();
    if ratio > 1e-8 {
        return Err(TransformError::InsufficientDecay(ratio));
    }
    let space = RankOneSpace::sl2();
    let kappa = hc_kappa(&space);
    let pre = kappa * kappa / KAPPA_J;
    let mut out = vec![0.0; upsilons.len()];
    for ((l, w), v) in profile.rule.nodes.iter().zip(&profile.rule.weights).zip(&profile.values) {
        if v.re == 0.0 {
            continue;
        }
        let density = bochner_density(&space, &SpectralParam::unitary(*l))?;
        let scale = pre * w * v.re * plancherel_weight(*l);
        for (o, u) in out.iter_mut().zip(upsilons) {
            *o += scale * density.eval(*u)?.re;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundTrip {
    /// `sup |(F^s)^∨ − f| / sup |f|` on the t-grid.
    pub max_defect: f64,
    /// The same for plain spherical inversion.
    pub inversion_defect: f64,
    /// Abel–Fourier defect on the same spectral rule.
    pub fourier_defect: f64,
    pub t_grid: Vec<f64>,
    pub reconstructed: Vec<f64>,
}

/// `f(t) = ∫ e^{−iυt} F^s(υ) dυ` compared with `f`.
pub fn spectral_roundtrip(f: &RadialFunction) -> Result<RoundTrip, TransformError> {
    let bound = f.effective_bound()?;
    let t_grid: Vec<f64> = (0..=((bound / 0.25).ceil() as usize)).map(|k| (0.25 * k as f64).min(bound)).collect();
    let reference: Vec<f64> = t_grid.iter().map(|t| f.eval(*t)).collect();
    let scale = reference.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(RoundTrip {
            max_defect: 0.0,
            inversion_defect: 0.0,
            fourier_defect: 0.0,
            reconstructed: vec![0.0; t_grid.len()],
            t_grid,
        });
    }
    let rule = SpectralRule::auto(f)?;
    let profile = spherical_transform(f, &rule)?;
    // m(λ, ·) spreads about one unit past |λ| and then decays like e^{−π|υ|}
    let cutoff = rule.max() + 20.0;
    let panel = (NYQUIST_LIMIT / (2.0 * bound) * 0.9).min(0.25);
    let panels = (cutoff / panel).ceil() as usize;
    let upsilon_rule = GaussLegendre::new(SPECTRAL_ORDER).composite_points(0.0, cutoff, panels);
    let ups: Vec<f64> = upsilon_rule.iter().map(|p| p.0).collect();
    let fs = spectral_ff(&profile, &ups)?;
    let reconstructed: Vec<f64> = t_grid.iter().map(|t| even_fourier(&upsilon_rule, &fs, *t)).collect();
    let sup_defect = |xs: &[f64]| xs.iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / scale;
    let inverted = inverse_spherical(&profile, &t_grid)?;
    let fourier_defect = abel_fourier_identity(f, &rule)?.max_defect;
    Ok(RoundTrip {
        max_defect: sup_defect(&reconstructed),
        inversion_defect: sup_defect(&inverted),
        fourier_defect,
        t_grid,
        reconstructed,
    })
}
