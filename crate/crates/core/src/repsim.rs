//! The `SL(2, R)` principal series in its A-adapted form on `V' = R∖{0}`.
//!
//! `V'` is two A-orbits `ω = ±1`, parametrized by `x = ω·2e^{−u}`; the
//! cross-section `|x| = 2` is `u = 0` and the invariant measure is `du`.
//! `a_s` acts by `(Ũ(a_s)f)(ω, u) = e^{iνs} f(ω, u − s)`. The transform of
//! a vector is the Fourier transform of its twisted profile
//! `f_λ(ω, u) = e^{−iνu} f(ω, u)`, and for `f` in the `λ` realization and `g`
//! in the contragredient one
//!
//! ```text
//! (Ũ(a_s)f, g) = ∫ e^{−iυs} m_{f,g}(υ) dυ,   m_{f,g} = (1/2π) Σ_ω f̃(υ, ω) conj g̃(υ, ω).
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::quad::{integrate, GaussLegendre, QuadConfig, QuadError};
use crate::rankone::{k_fixed_adapted_vector, RankOneError, RankOneSpace};
use crate::spectral::SpectralParam;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepSimError {
    #[error("vector lives in the realization {found}, expected {expected}")]
    RealizationMismatch { expected: String, found: String },
    #[error("the pair is not integrable on the orbits: {0}")]
    NonIntegrablePair(&'static str),
    #[error("twisted profile is not integrable (edge value {edge:e} relative to peak)")]
    ParsevalHypothesisFailed { edge: f64 },
    #[error("λ = {0} (ρ-units) is outside 0 <= Re λ < 1")]
    OutOfStrip(Complex64),
    #[error("λ = {0} (ρ-units) is not on the unitary axis")]
    NotUnitary(Complex64),
    #[error(transparent)]
    RankOne(#[from] RankOneError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orbit {
    Plus,
    Minus,
}

impl Orbit {
    pub const BOTH: [Orbit; 2] = [Orbit::Plus, Orbit::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Orbit::Plus => 1.0,
            Orbit::Minus => -1.0,
        }
    }

    /// Orbit and parameter of a point of `V'`.
    pub fn locate(x: f64) -> Option<(Orbit, f64)> {
        if x == 0.0 || !x.is_finite() {
            return None;
        }
        let orbit = if x > 0.0 { Orbit::Plus } else { Orbit::Minus };
        Some((orbit, -(x.abs() / 2.0).ln()))
    }
}

pub type Profile = Arc<dyn Fn(Orbit, f64) -> Complex64 + Send + Sync>;

/// A vector of the `λ` realization, as a function on the two orbits, with
/// the `u`-window outside which it is negligible.
#[derive(Clone)]
pub struct AdaptedVector {
    profile: Profile,
    pub lambda: SpectralParam,
    pub space: RankOneSpace,
    pub window: (f64, f64),
}

impl fmt::Debug for AdaptedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdaptedVector")
            .field("lambda", &self.lambda)
            .field("window", &self.window)
            .finish()
    }
}

/// Window for vectors decaying like the K-fixed one: `|f_λ| ≤ e^{−25}` outside.
pub fn default_window(space: &RankOneSpace, lambda: &SpectralParam) -> (f64, f64) {
    let lr = space.lambda_rho(lambda).re.abs().min(0.999);
    let s = (25.0 / (space.rho() * (1.0 - lr)) + 10.0).min(6000.0);
    (-s, s)
}

impl AdaptedVector {
    pub fn new(profile: Profile, lambda: SpectralParam, space: RankOneSpace) -> Self {
        let window = default_window(&space, &lambda);
        Self {
            profile,
            lambda,
            space,
            window,
        }
    }

    pub fn from_fn<F>(f: F, lambda: SpectralParam, window: (f64, f64)) -> Self
    where
        F: Fn(Orbit, f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            profile: Arc::new(f),
            lambda,
            space: RankOneSpace::sl2(),
            window,
        }
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Self {
        self.window = (lo, hi);
        self
    }

    pub fn eval(&self, omega: Orbit, u: f64) -> Complex64 {
        (self.profile)(omega, u)
    }

    /// Value at `x ∈ V'`.
    pub fn at(&self, x: f64) -> Option<Complex64> {
        Orbit::locate(x).map(|(o, u)| self.eval(o, u))
    }

    pub fn nu(&self) -> Complex64 {
        self.space.nu(&self.lambda)
    }

    /// `f_λ(ω, u) = e^{−iνu} f(ω, u)`.
    pub fn twisted(&self, omega: Orbit, u: f64) -> Complex64 {
        (-Complex64::i() * self.nu() * u).exp() * self.eval(omega, u)
    }

    fn realization_matches(&self, lambda: &SpectralParam) -> bool {
        (self.space.nu(lambda) - self.nu()).norm() <= 1e-12 * (1.0 + self.nu().norm())
    }
}

/// Smooth bump `exp(−1/(1 − y²))`, `y = (u − center)/half_width`, on one orbit.
pub fn bump_vector(lambda: SpectralParam, orbit: Orbit, center: f64, half_width: f64) -> AdaptedVector {
    AdaptedVector::from_fn(
        move |o, u| {
            let y = (u - center) / half_width;
            if o != orbit || y.abs() >= 1.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new((-1.0 / (1.0 - y * y)).exp(), 0.0)
            }
        },
        lambda,
        (center - half_width, center + half_width),
    )
}

/// One Gaussian component `amp·exp(−((u − center)/width)²)` on `orbit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBump {
    pub orbit: Orbit,
    pub center: f64,
    pub width: f64,
    pub amp: Complex64,
}

/// Sum of Gaussian components, windowed at 8 widths.
pub fn gaussian_mixture(lambda: SpectralParam, parts: Vec<GaussianBump>) -> AdaptedVector {
    let lo = parts.iter().map(|p| p.center - 8.0 * p.width).fold(f64::INFINITY, f64::min);
    let hi = parts.iter().map(|p| p.center + 8.0 * p.width).fold(f64::NEG_INFINITY, f64::max);
    let window = if lo < hi { (lo, hi) } else { (0.0, 0.0) };
    AdaptedVector::from_fn(
        move |o, u| {
            parts
                .iter()
                .filter(|p| p.orbit == o)
                .map(|p| p.amp * (-((u - p.center) / p.width).powi(2)).exp())
                .sum()
        },
        lambda,
        window,
    )
}

/// `(Ũ(a_s)f)(ω, u) = e^{iνs} f(ω, u − s)`.
pub fn adapted_action(lambda: &SpectralParam, s: f64, f: &AdaptedVector) -> Result<AdaptedVector, RepSimError> {
    if !f.realization_matches(lambda) {
        return Err(RepSimError::RealizationMismatch {
            expected: lambda.to_string(),
            found: f.lambda.to_string(),
        });
    }
    let character = (Complex64::i() * f.nu() * s).exp();
    let inner = f.profile.clone();
    Ok(AdaptedVector {
        profile: Arc::new(move |o, u| character * inner(o, u - s)),
        lambda: f.lambda,
        space: f.space,
        window: (f.window.0 + s, f.window.1 + s),
    })
}

fn orbit_config() -> QuadConfig {
    QuadConfig::abs(1e-14).with_rel(1e-13).with_max_intervals(100_000)
}

/// Integral of `F(ω, u)` over both orbits and the window.
fn orbit_integral<F: Fn(Orbit, f64) -> Complex64>(f: F, window: (f64, f64)) -> Result<Complex64, RepSimError> {
    let (lo, hi) = window;
    if !(lo < hi) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let cfg = orbit_config();
    let mut total = Complex64::new(0.0, 0.0);
    for o in Orbit::BOTH {
        // split at 0 where the cross-section sits and profiles are sharpest
        let points = [lo, lo.max(0.0).min(hi), hi];
        for w in points.windows(2) {
            if w[1] > w[0] {
                total += integrate(|u: f64| f(o, u), w[0], w[1], &cfg)?.value;
            }
        }
    }
    Ok(total)
}

/// `(f, g) = Σ_ω ∫ f(ω, u) conj g(ω, u) du`.
pub fn inner_product(f: &AdaptedVector, g: &AdaptedVector) -> Result<Complex64, RepSimError> {
    let window = (f.window.0.max(g.window.0), f.window.1.min(g.window.1));
    let v = orbit_integral(|o, u| f.eval(o, u) * g.eval(o, u).conj(), window)?;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(RepSimError::NonIntegrablePair("inner product is not finite"));
    }
    Ok(v)
}

/// Adapted norm `(Σ_ω ∫ |f|² w_λ du)^{1/2}` with `w_λ = e^{2 Re λ ρH} = (1 + e^{−2u})^{Re λ}`;
/// `w_λ ≡ 1` on the unitary axis.
pub fn orbit_norm(f: &AdaptedVector) -> Result<f64, RepSimError> {
    let lr = f.space.lambda_rho(&f.lambda).re;
    let ln_weight = move |u: f64| -> f64 {
        let log1p = if u > 0.0 {
            (-2.0 * u).exp().ln_1p()
        } else {
            -2.0 * u + (2.0 * u).exp().ln_1p()
        };
        lr * log1p
    };
    // |f|² w_λ in log space: both factors overflow separately far out
    let density = |o: Orbit, u: f64| -> Complex64 {
        let a = f.eval(o, u).norm();
        let v = if a == 0.0 { 0.0 } else { (2.0 * a.ln() + ln_weight(u)).exp() };
        Complex64::new(v, 0.0)
    };
    let v = orbit_integral(density, f.window)?;
    if !v.re.is_finite() {
        return Err(RepSimError::NonIntegrablePair("orbit norm is not finite"));
    }
    Ok(v.re.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCoefficient {
    pub samples: Vec<(f64, Complex64)>,
    pub lambda: SpectralParam,
}

fn check_pair(f: &AdaptedVector, g: &AdaptedVector) -> Result<(), RepSimError> {
    let expected = f.lambda.contragredient();
    if !g.realization_matches(&expected) {
        return Err(RepSimError::RealizationMismatch {
            expected: expected.to_string(),
            found: g.lambda.to_string(),
        });
    }
    Ok(())
}

/// `c_{f,g}(a_s) = (Ũ(a_s)f, g)` by orbit quadrature, `g` in the contragredient realization.
pub fn matrix_coefficient_direct(f: &AdaptedVector, g: &AdaptedVector, s_grid: &[f64]) -> Result<MatrixCoefficient, RepSimError> {
    check_pair(f, g)?;
    let mut samples = Vec::with_capacity(s_grid.len());
    for s in s_grid {
        let moved = adapted_action(&f.lambda, *s, f)?;
        samples.push((*s, inner_product(&moved, g)?));
    }
    Ok(MatrixCoefficient { samples, lambda: f.lambda })
}

/// Composite Gauss–Legendre layout of an orbit window, with per-panel
/// centers so Fourier sums can factor `e^{−iυu} = e^{−iυc} e^{−iυ(u−c)}`.
struct OrbitGrid {
    centers: Vec<f64>,
    offsets: Vec<f64>,
    weights: Vec<f64>,
}

impl OrbitGrid {
    fn new(window: (f64, f64), max_freq: f64) -> Self {
        let (lo, hi) = window;
        let h_max = (3.0 / max_freq.max(1e-3)).min(0.25);
        let panels = ((hi - lo) / h_max).ceil().max(1.0) as usize;
        let h = (hi - lo) / panels as f64;
        let gl = GaussLegendre::new(16);
        let centers = (0..panels).map(|k| lo + h * (k as f64 + 0.5)).collect();
        let offsets = gl.nodes.iter().map(|x| 0.5 * h * x).collect();
        let weights = gl.weights.iter().map(|w| 0.5 * h * w).collect();
        Self { centers, offsets, weights }
    }

    /// `Σ_panels Σ_nodes w f(u) e^{−iυu}` for each `υ`, with `f` sampled once.
    fn fourier(&self, values: &[Complex64], upsilons: &[f64]) -> Vec<Complex64> {
        let n = self.offsets.len();
        upsilons
            .iter()
            .map(|&v| {
                let local: Vec<Complex64> = self
                    .offsets
                    .iter()
                    .zip(&self.weights)
                    .map(|(d, w)| Complex64::from_polar(*w, -v * d))
                    .collect();
                let mut total = Complex64::new(0.0, 0.0);
                for (p, c) in self.centers.iter().enumerate() {
                    let mut s = Complex64::new(0.0, 0.0);
                    let block = &values[p * n..(p + 1) * n];
                    for (a, b) in block.iter().zip(&local) {
                        s += a * b;
                    }
                    total += s * Complex64::from_polar(1.0, -v * c);
                }
                total
            })
            .collect()
    }

    fn sample<F: Fn(f64) -> Complex64>(&self, f: F) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.centers.len() * self.offsets.len());
        for c in &self.centers {
            for d in &self.offsets {
                out.push(f(c + d));
            }
        }
        out
    }
}

fn check_integrable(values: &[Complex64]) -> Result<(), RepSimError> {
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(());
    }
    let edge = values.first().unwrap().norm().max(values.last().unwrap().norm()) / peak;
    if !edge.is_finite() || edge > 1e-8 {
        return Err(RepSimError::ParsevalHypothesisFailed { edge });
    }
    Ok(())
}

/// Orbit transforms `Σ` on a given set of frequencies: `(f̃(υ, +), f̃(υ, −))`.
fn orbit_transforms(f: &AdaptedVector, upsilons: &[f64]) -> Result<Vec<[Complex64; 2]>, RepSimError> {
    let max_freq = upsilons.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let grid = OrbitGrid::new(f.window, max_freq);
    let mut per_orbit = Vec::with_capacity(2);
    for o in Orbit::BOTH {
        let values = grid.sample(|u| f.twisted(o, u));
        check_integrable(&values)?;
        per_orbit.push(grid.fourier(&values, upsilons));
    }
    Ok((0..upsilons.len()).map(|k| [per_orbit[0][k], per_orbit[1][k]]).collect())
}

/// `m_{f,g}(υ) = (1/2π) Σ_ω f̃(υ, ω) conj g̃(υ, ω)` at each grid point.
pub fn bochner_from_vectors(f: &AdaptedVector, g: &AdaptedVector, upsilons: &[f64]) -> Result<Vec<Complex64>, RepSimError> {
    check_pair(f, g)?;
    let ft = orbit_transforms(f, upsilons)?;
    let gt = orbit_transforms(g, upsilons)?;
    Ok(ft
        .iter()
        .zip(&gt)
        .map(|(a, b)| (a[0] * b[0].conj() + a[1] * b[1].conj()) / (2.0 * PI))
        .collect())
}

/// Symmetric quadrature rule on `[−U, U]`, panels growing geometrically
/// from `fine` near 0 up to `coarse`.
pub fn spectral_rule(fine: f64, coarse: f64, cutoff: f64) -> Vec<(f64, f64)> {
    let gl = GaussLegendre::new(10);
    let mut edges = vec![0.0];
    let mut x = 0.0;
    while x < cutoff {
        let w = (fine.max(0.3 * x)).min(coarse);
        x = (x + w).min(cutoff);
        edges.push(x);
    }
    let mut rule = Vec::new();
    for e in edges.windows(2) {
        for (u, w) in gl.composite_points(e[0], e[1], 1) {
            rule.push((u, w));
            rule.push((-u, w));
        }
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

/// Result of comparing direct matrix coefficients with the Fourier integral of `m_{f,g}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    /// `(s, direct, via density)`.
    pub samples: Vec<(f64, Complex64, Complex64)>,
    pub max_defect: f64,
}

/// Spectral extent for a pair: `(fine panel, cutoff)` in `υ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralExtent {
    pub fine: f64,
    pub coarse: f64,
    pub cutoff: f64,
}

impl SpectralExtent {
    /// Smooth Schwartz-type profiles: moderate cutoff, uniform resolution.
    pub fn smooth() -> Self {
        Self {
            fine: 0.1,
            coarse: 0.2,
            cutoff: 60.0,
        }
    }

    /// The K-fixed pair: `m` decays like `e^{−π|υ|}` and peaks at width `~2b`,
    /// `b = ρ(1 − |Re λ|)/2`.
    pub fn k_fixed(space: &RankOneSpace, lambda: &SpectralParam) -> Self {
        let b = space.rho() * (1.0 - space.lambda_rho(lambda).re.abs()) / 2.0;
        Self {
            fine: (b / 4.0).min(0.1),
            coarse: 0.2,
            cutoff: 16.0,
        }
    }
}

fn compare_routes(f: &AdaptedVector, g: &AdaptedVector, s_samples: &[f64], extent: SpectralExtent) -> Result<TheoremCheck, RepSimError> {
    let direct = matrix_coefficient_direct(f, g, s_samples)?;
    let rule = spectral_rule(extent.fine, extent.coarse, extent.cutoff);
    let upsilons: Vec<f64> = rule.iter().map(|r| r.0).collect();
    let m = bochner_from_vectors(f, g, &upsilons)?;
    let mut samples = Vec::with_capacity(s_samples.len());
    let mut max_defect: f64 = 0.0;
    for (s, d) in direct.samples {
        let mut via = Complex64::new(0.0, 0.0);
        for ((u, w), mv) in rule.iter().zip(&m) {
            via += Complex64::from_polar(*w, -u * s) * mv;
        }
        max_defect = max_defect.max((via - d).norm());
        samples.push((s, d, via));
    }
    Ok(TheoremCheck { samples, max_defect })
}

/// Unitary case: `(Ũ(a_s)f, g) = ∫ e^{−iυs} m_{f,g}(υ) dυ` at each sample.
pub fn theorem_41_check(f: &AdaptedVector, g: &AdaptedVector, s_samples: &[f64], extent: SpectralExtent) -> Result<TheoremCheck, RepSimError> {
    let lam = f.space.lambda_rho(&f.lambda);
    if lam.re.abs() > 1e-12 {
        return Err(RepSimError::NotUnitary(lam));
    }
    compare_routes(f, g, s_samples, extent)
}

/// Strip case `0 ≤ Re λ < 1` with the K-fixed pair (`f` in `λ`, `g` in `λ'`).
pub fn theorem_51_check(lambda: &SpectralParam, s_samples: &[f64]) -> Result<TheoremCheck, RepSimError> {
    let space = RankOneSpace::sl2();
    let lam = space.lambda_rho(lambda);
    if !(lam.re >= 0.0 && lam.re < 1.0) {
        return Err(RepSimError::OutOfStrip(lam));
    }
    let (f, g) = k_fixed_pair(lambda)?;
    compare_routes(&f, &g, s_samples, SpectralExtent::k_fixed(&space, lambda))
}

/// K-fixed vectors of the `λ` and `λ'` realizations.
pub fn k_fixed_pair(lambda: &SpectralParam) -> Result<(AdaptedVector, AdaptedVector), RepSimError> {
    let space = RankOneSpace::sl2();
    let f = k_fixed_adapted_vector(&space, lambda)?;
    let g = k_fixed_adapted_vector(&space, &lambda.contragredient())?;
    Ok((f, g))
}

/// `m_{f,f'}(υ)/c(0)` for the K-fixed pair against the closed density, max relative defect.
pub fn k_fixed_density_defect(lambda: &SpectralParam, upsilons: &[f64]) -> Result<f64, RepSimError> {
    let space = RankOneSpace::sl2();
    let (f, g) = k_fixed_pair(lambda)?;
    let c0 = inner_product(&f, &g)?;
    let m = bochner_from_vectors(&f, &g, upsilons)?;
    let closed = crate::bochner::bochner_density(&space, lambda).map_err(|_| RepSimError::OutOfStrip(space.lambda_rho(lambda)))?;
    let mut worst: f64 = 0.0;
    for (u, mv) in upsilons.iter().zip(&m) {
        let exact = closed.eval(*u).map_err(|_| RepSimError::NonIntegrablePair("closed density failed"))?;
        worst = worst.max((mv / c0 - exact).norm() / exact.norm());
    }
    Ok(worst)
}

/// Smallest eigenvalue of `[c_{f,f}(s_i − s_j)]`, unitary `λ`.
pub fn coefficient_gram_min_eigenvalue(f: &AdaptedVector, points: &[f64]) -> Result<f64, RepSimError> {
    let n = points.len();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let moved = adapted_action(&f.lambda, points[i] - points[j], f)?;
            let v = inner_product(&moved, f)?;
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    // Hermitian n×n as real symmetric 2n×2n [[A, −B], [B, A]].
    let mut r = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            r[(i, j)] = z.re;
            r[(i + n, j + n)] = z.re;
            r[(i, j + n)] = -z.im;
            r[(i + n, j)] = z.im;
        }
    }
    let eig = SymmetricEigen::new(r);
    Ok(eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical::phi_via_bochner;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bump(center: f64, half_width: f64) -> impl Fn(f64) -> f64 + Send + Sync {
        move |u: f64| {
            let y = (u - center) / half_width;
            if y.abs() < 1.0 {
                (-1.0 / (1.0 - y * y)).exp()
            } else {
                0.0
            }
        }
    }

    #[test]
    fn action_is_a_representation() {
        let lam = SpectralParam::unitary(0.7);
        let b = bump(0.5, 2.0);
        let f = AdaptedVector::from_fn(move |o, u| c(b(u) * (1.0 + 0.3 * o.sign()), 0.2 * u), lam, (-1.5, 2.5));
        let id = adapted_action(&lam, 0.0, &f).unwrap();
        let ab = adapted_action(&lam, 0.4, &adapted_action(&lam, 0.9, &f).unwrap()).unwrap();
        let direct = adapted_action(&lam, 1.3, &f).unwrap();
        for o in Orbit::BOTH {
            for u in [-1.0, 0.0, 0.7, 2.0, 3.1] {
                assert_eq!(id.eval(o, u), f.eval(o, u));
                assert!((ab.eval(o, u) - direct.eval(o, u)).norm() < 1e-12);
            }
        }
        let n0 = orbit_norm(&f).unwrap();
        let n1 = orbit_norm(&adapted_action(&lam, 2.2, &f).unwrap()).unwrap();
        assert!((n0 - n1).abs() < 1e-10 * n0);
        assert!(matches!(
            adapted_action(&SpectralParam::unitary(0.1), 1.0, &f),
            Err(RepSimError::RealizationMismatch { .. })
        ));
    }

    #[test]
    fn k_fixed_norm_is_finite_across_strip() {
        let s = RankOneSpace::sl2();
        for lr in [-0.9, -0.6, 0.0, 0.5, 0.9] {
            let f = k_fixed_adapted_vector(&s, &SpectralParam::real_rho(lr)).unwrap();
            let n = orbit_norm(&f).unwrap();
            // |f|² w_λ = 1/(2 cosh u) on each orbit
            assert!((n * n - PI).abs() < 1e-8, "lr={lr} n²={}", n * n);
        }
    }

    #[test]
    fn k_fixed_coefficient_is_spherical_function() {
        let s = RankOneSpace::sl2();
        for lam in [SpectralParam::unitary(1.0), SpectralParam::real_rho(0.5)] {
            let (f, g) = k_fixed_pair(&lam).unwrap();
            let c0 = inner_product(&f, &g).unwrap();
            assert!((c0 - c(PI, 0.0)).norm() < 1e-9);
            let mc = matrix_coefficient_direct(&f, &g, &[0.5, 1.5, 3.0]).unwrap();
            for (sv, v) in mc.samples {
                let phi = phi_via_bochner(&s, &lam, c(sv, 0.0)).unwrap().value;
                assert!((v / c0 - phi).norm() < 1e-6, "s={sv} {} vs {phi}", v / c0);
            }
        }
    }

    #[test]
    fn duality_between_realizations() {
        let lam = SpectralParam::rho(c(0.3, 0.4));
        let (f, g) = k_fixed_pair(&lam).unwrap();
        for s in [-1.0, 0.6, 2.0] {
            let lhs = inner_product(&adapted_action(&f.lambda, s, &f).unwrap(), &g).unwrap();
            let rhs = inner_product(&f, &adapted_action(&g.lambda, -s, &g).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * lhs.norm(), "{lhs} {rhs}");
        }
    }

    #[test]
    fn inner_product_is_translation_invariant() {
        let lam = SpectralParam::unitary(0.0);
        let b1 = bump(0.0, 1.5);
        let b2 = bump(0.6, 2.0);
        let f = AdaptedVector::from_fn(move |_, u| c(b1(u), 0.0), lam, (-1.5, 1.5));
        let g = AdaptedVector::from_fn(move |o, u| c(b2(u), 0.1 * o.sign()), lam, (-1.4, 2.6));
        let base = inner_product(&f, &g).unwrap();
        for s in [-2.0, 0.3, 4.0] {
            let fs = AdaptedVector::from_fn(
                {
                    let f = f.clone();
                    move |o, u| f.eval(o, u - s)
                },
                lam,
                (f.window.0 + s, f.window.1 + s),
            );
            let gs = AdaptedVector::from_fn(
                {
                    let g = g.clone();
                    move |o, u| g.eval(o, u - s)
                },
                lam,
                (g.window.0 + s, g.window.1 + s),
            );
            let moved = inner_product(&fs, &gs).unwrap();
            assert!((moved - base).norm() < 1e-10 * base.norm());
        }
    }

    #[test]
    fn translation_covariance_of_transform() {
        let lam = SpectralParam::unitary(0.4);
        let b = bump(0.2, 2.0);
        let f = AdaptedVector::from_fn(move |o, u| c(b(u), 0.0) * (1.0 + 0.5 * o.sign()), lam, (-1.8, 2.2));
        let s = 0.9;
        let ups = [-3.0, -0.5, 0.0, 1.2, 4.0];
        let moved = adapted_action(&lam, s, &f).unwrap();
        let a = orbit_transforms(&f, &ups).unwrap();
        let b = orbit_transforms(&moved, &ups).unwrap();
        for (k, u) in ups.iter().enumerate() {
            for o in 0..2 {
                let expected = a[k][o] * Complex64::from_polar(1.0, -u * s);
                assert!((b[k][o] - expected).norm() < 1e-10 * (1.0 + expected.norm()));
            }
        }
    }

    #[test]
    fn unit_density_from_k_fixed_vectors_matches_closed_form() {
        let ups: Vec<f64> = (0..=20).map(|k| -6.0 + 0.6 * k as f64).collect();
        for lam in [SpectralParam::unitary(0.8), SpectralParam::real_rho(0.5), SpectralParam::rho(c(0.3, 0.4))] {
            let d = k_fixed_density_defect(&lam, &ups).unwrap();
            assert!(d < 1e-6, "{lam}: {d}");
        }
    }

    #[test]
    fn bump_pair_satisfies_parseval_and_theorem() {
        let lam = SpectralParam::unitary(0.6);
        let b = bump(0.3, 4.0);
        let f = AdaptedVector::from_fn(move |o, u| if o == Orbit::Plus { c(b(u), 0.0) } else { c(0.0, 0.0) }, lam, (-3.7, 4.3));
        let check = theorem_41_check(&f, &f, &[0.0, 0.5, 1.7, -2.4], SpectralExtent::smooth()).unwrap();
        assert!(check.max_defect < 1e-6, "{check:?}");
        let (_, d0, v0) = check.samples[0];
        assert!((d0 - v0).norm() < 1e-8);
        let m = bochner_from_vectors(&f, &f, &[0.0, 1.0, 5.0]).unwrap();
        assert!(m.iter().all(|v| v.re >= -1e-10 && v.im.abs() < 1e-12));
    }

    #[test]
    fn mixture_pair_satisfies_theorem() {
        let lam = SpectralParam::unitary(1.3);
        let f = gaussian_mixture(
            lam,
            vec![
                GaussianBump { orbit: Orbit::Plus, center: 0.4, width: 0.8, amp: c(1.0, 0.2) },
                GaussianBump { orbit: Orbit::Minus, center: -1.0, width: 1.1, amp: c(-0.5, 0.7) },
            ],
        );
        let g = gaussian_mixture(
            lam,
            vec![
                GaussianBump { orbit: Orbit::Plus, center: -0.3, width: 1.2, amp: c(0.8, -0.1) },
                GaussianBump { orbit: Orbit::Minus, center: 0.9, width: 0.7, amp: c(0.3, 0.3) },
            ],
        );
        let check = theorem_41_check(&f, &g, &[0.0, 0.6, -1.1, 2.3], SpectralExtent::smooth()).unwrap();
        assert!(check.max_defect < 1e-6, "{check:?}");
        let b = bump_vector(lam, Orbit::Minus, 0.5, 2.0);
        assert_eq!(b.eval(Orbit::Plus, 0.5), c(0.0, 0.0));
        assert!(b.eval(Orbit::Minus, 0.5).re > 0.0);
    }

    #[test]
    fn strip_theorem_for_k_fixed_pair() {
        for lam in [SpectralParam::real_rho(0.5), SpectralParam::rho(c(0.3, 0.4))] {
            let check = theorem_51_check(&lam, &[0.0, 0.8, 2.0, 3.5]).unwrap();
            assert!(check.max_defect < 1e-5, "{lam}: {check:?}");
        }
        assert!(matches!(theorem_51_check(&SpectralParam::real_rho(-0.2), &[0.0]), Err(RepSimError::OutOfStrip(_))));
    }

    #[test]
    fn twisted_profiles_decay_at_the_expected_rates() {
        let s = RankOneSpace::sl2();
        for lr in [0.0, 0.3, 0.7] {
            let lam = SpectralParam::rho(c(lr, 0.2));
            let (f, g) = k_fixed_pair(&lam).unwrap();
            for (v, rate) in [(&f, s.rho() * (1.0 + lr)), (&g, s.rho() * (1.0 - lr))] {
                for side in [1.0, -1.0] {
                    let ts: Vec<f64> = (0..20).map(|k| side * (20.0 + k as f64)).collect();
                    let vals: Vec<f64> = ts.iter().map(|u| v.twisted(Orbit::Plus, *u).norm()).collect();
                    let slope = crate::spherical::log_slope(&ts, &vals) * side;
                    assert!((-slope / rate - 1.0).abs() < 0.05, "lr={lr} side={side} slope={slope} rate={rate}");
                }
            }
        }
    }

    #[test]
    fn coefficient_gram_matrix_is_psd() {
        let (f, _) = k_fixed_pair(&SpectralParam::unitary(0.9)).unwrap();
        let pts = [0.0, 0.4, -1.3, 2.0, 0.9, -0.2];
        let e = coefficient_gram_min_eigenvalue(&f, &pts).unwrap();
        assert!(e >= -1e-8, "{e}");
    }

    #[test]
    fn locate_points() {
        assert_eq!(Orbit::locate(2.0), Some((Orbit::Plus, 0.0)));
        let (o, u) = Orbit::locate(-2.0 * (-1.5f64).exp()).unwrap();
        assert_eq!(o, Orbit::Minus);
        assert!((u - 1.5).abs() < 1e-15);
        assert_eq!(Orbit::locate(0.0), None);
    }
}
