//! Rank-one symmetric spaces: root data, the closed forms for `ξ_{−ρ}` and
//! `e^{ρH}` on `V'`, the 2×2 Iwasawa decomposition and the K-integral
//! oracle for `φ_λ`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::quad::{integrate, QuadConfig, QuadError};
use crate::repsim::{AdaptedVector, Orbit};
use crate::spectral::SpectralParam;
use crate::spherical::{Method, SphericalValue};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RankOneError {
    #[error("invalid root multiplicities p={p}, q={q}")]
    InvalidSpace { p: u32, q: u32 },
    #[error("the point (|X|, |Y|) = (0, 0) is not in V'")]
    DegeneratePoint,
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(f64),
    #[error("operation not available for space {0}")]
    UnsupportedSpace(RankOneSpace),
    #[error("quadrature failed: {0}")]
    Quadrature(#[from] QuadError),
    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    /// `q = 0`: closed-form Bochner density, oracle available.
    Exact,
    /// `q > 0`: cross-section weight is a configurable guess.
    Experimental,
}

/// Root multiplicities `p = dim g_α`, `q = dim g_{2α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankOneSpace {
    pub p: u32,
    pub q: u32,
}

impl fmt::Display for RankOneSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl RankOneSpace {
    pub fn new(p: u32, q: u32) -> Result<Self, RankOneError> {
        if p == 0 || p > 64 || q > 16 {
            return Err(RankOneError::InvalidSpace { p, q });
        }
        Ok(Self { p, q })
    }

    /// `SL(2, R)`, the hyperbolic plane.
    pub fn sl2() -> Self {
        Self { p: 1, q: 0 }
    }

    /// Real hyperbolic space of dimension `n`, `SO(n, 1)`.
    pub fn real_hyperbolic(n: u32) -> Result<Self, RankOneError> {
        if n < 2 {
            return Err(RankOneError::InvalidSpace { p: 0, q: 0 });
        }
        Self::new(n - 1, 0)
    }

    pub fn is_sl2(&self) -> bool {
        self.p == 1 && self.q == 0
    }

    /// `r = (p + 2q)/4`.
    pub fn r(&self) -> f64 {
        (self.p + 2 * self.q) as f64 / 4.0
    }

    /// `c` with `c⁻¹ = 4(p + 4q)`.
    pub fn c_h(&self) -> f64 {
        1.0 / (4.0 * (self.p + 4 * self.q) as f64)
    }

    /// `ρ(H)` for `α(H) = 1`.
    pub fn rho(&self) -> f64 {
        (self.p + 2 * self.q) as f64 / 2.0
    }

    pub fn exactness(&self) -> Exactness {
        if self.q == 0 {
            Exactness::Exact
        } else {
            Exactness::Experimental
        }
    }

    /// Half-width of the strip `|Im t| < R` to which `φ_λ` extends: `π/α(H)`
    /// for the largest root, so `π` when `q = 0` and `π/2` otherwise.
    pub fn tube_radius(&self) -> f64 {
        if self.q == 0 {
            PI
        } else {
            PI / 2.0
        }
    }

    /// `ν` of a spectral parameter on this space.
    pub fn nu(&self, lambda: &SpectralParam) -> Complex64 {
        lambda.nu(self.rho())
    }

    /// `λ` in ρ-units.
    pub fn lambda_rho(&self, lambda: &SpectralParam) -> Complex64 {
        lambda.lambda_rho(self.rho())
    }
}

/// A point `exp X exp Y` of `V`, recorded through `|X|` and `|Y|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VPoint {
    pub x_norm: f64,
    pub y_norm: f64,
}

impl VPoint {
    pub fn new(x_norm: f64, y_norm: f64) -> Self {
        Self {
            x_norm: x_norm.abs(),
            y_norm: y_norm.abs(),
        }
    }

    /// The lower unipotent matrix `[[1, 0], [y, 1]]` of `SL(2, R)`, for which `|X| = 2|y|`.
    pub fn sl2_lower_unipotent(y: f64) -> Self {
        Self::new(2.0 * y, 0.0)
    }
}

/// `ξ_{−ρ}(v) = [c²|X|⁴ + 4c|Y|²]^{−(p+2q)/4}`.
pub fn xi_minus_rho(space: &RankOneSpace, v: VPoint) -> Result<f64, RankOneError> {
    if v.x_norm == 0.0 && v.y_norm == 0.0 {
        return Err(RankOneError::DegeneratePoint);
    }
    let c = space.c_h();
    let base = c * c * v.x_norm.powi(4) + 4.0 * c * v.y_norm * v.y_norm;
    Ok(base.powf(-space.r()))
}

/// `e^{ρH(v)} = [(1 + c|X|²)² + 4c|Y|²]^{(p+2q)/4}`.
pub fn exp_rho_h(space: &RankOneSpace, v: VPoint) -> f64 {
    let c = space.c_h();
    let a = 1.0 + c * v.x_norm * v.x_norm;
    (a * a + 4.0 * c * v.y_norm * v.y_norm).powf(space.r())
}

pub type Mat2 = [[f64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

pub fn rotation(theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    [[c, -s], [s, c]]
}

/// `a_t = diag(e^{t/2}, e^{−t/2})`.
pub fn a_t(t: f64) -> Mat2 {
    [[(t / 2.0).exp(), 0.0], [0.0, (-t / 2.0).exp()]]
}

pub fn upper_unipotent(x: f64) -> Mat2 {
    [[1.0, x], [0.0, 1.0]]
}

/// Components of `g = k(θ) a_t n(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Iwasawa {
    pub k_angle: f64,
    pub t: f64,
    pub n_entry: f64,
}

impl Iwasawa {
    pub fn compose(&self) -> Mat2 {
        mat_mul(&mat_mul(&rotation(self.k_angle), &a_t(self.t)), &upper_unipotent(self.n_entry))
    }
}

/// `g = k(θ)·diag(e^{t/2}, e^{−t/2})·n(x)` for `det g = 1`.
pub fn iwasawa_decompose(g: &Mat2) -> Result<Iwasawa, RankOneError> {
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if !det.is_finite() || (det - 1.0).abs() > 1e-12 {
        return Err(RankOneError::NotUnimodular(det));
    }
    let norm = g[0][0].hypot(g[1][0]);
    let k_angle = g[1][0].atan2(g[0][0]);
    let (s, c) = k_angle.sin_cos();
    // first row of k(θ)⁻¹ g
    let top_right = c * g[0][1] + s * g[1][1];
    Ok(Iwasawa {
        k_angle,
        t: 2.0 * norm.ln(),
        n_entry: top_right / norm,
    })
}

fn oracle_config() -> QuadConfig {
    QuadConfig::abs(1e-13).with_rel(1e-13).with_max_intervals(20_000)
}

fn require_exact(space: &RankOneSpace) -> Result<(), RankOneError> {
    if space.q != 0 {
        return Err(RankOneError::UnsupportedSpace(*space));
    }
    Ok(())
}

/// `φ_λ(a_t) = c_p ∫₀^π (cosh t − sinh t cos θ)^{−(ρ + iν)} sin^{p−1}θ dθ`, with
/// `c_p` fixed by quadrature at `t = 0`.
pub fn spherical_oracle(space: &RankOneSpace, lambda: &SpectralParam, t: f64) -> Result<SphericalValue, RankOneError> {
    require_exact(space)?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(RankOneError::OutOfRange("oracle needs real t >= 0"));
    }
    let nu = space.nu(lambda);
    let rho = space.rho();
    let pm1 = (space.p - 1) as i32;
    let cfg = oracle_config();
    let norm = integrate(|th: f64| th.sin().powi(pm1), 0.0, PI, &cfg)?;
    let exponent = -(Complex64::new(rho, 0.0) + Complex64::i() * nu);
    let (et, emt) = (t.exp(), (-t).exp());
    let r = integrate(
        |th: f64| {
            let (s, c) = (th / 2.0).sin_cos();
            // cosh t − sinh t cos θ without cancellation
            let base = et * s * s + emt * c * c;
            (exponent * base.ln()).exp() * th.sin().powi(pm1)
        },
        0.0,
        PI,
        &cfg,
    )?;
    let value = r.value / norm.value;
    let abs_err = r.abs_err / norm.value + value.norm() * norm.abs_err / norm.value;
    Ok(SphericalValue {
        value,
        method: Method::Oracle,
        abs_err,
    })
}

/// `φ_λ(a_t) = (1/2π) ∫₀^{2π} e^{(iν − ρ) H(a_t k_θ)} dθ`, with `H` read off
/// [`iwasawa_decompose`]. `SL(2, R)` only.
pub fn spherical_oracle_iwasawa(lambda: &SpectralParam, t: f64) -> Result<SphericalValue, RankOneError> {
    let space = RankOneSpace::sl2();
    let nu = space.nu(lambda);
    let exponent = Complex64::i() * nu - space.rho();
    let g = a_t(t);
    let mut failure = None;
    let r = integrate(
        |th: f64| match iwasawa_decompose(&mat_mul(&g, &rotation(th))) {
            Ok(d) => (exponent * d.t).exp(),
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        0.0,
        2.0 * PI,
        &oracle_config(),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(SphericalValue {
        value: r.value / (2.0 * PI),
        method: Method::Oracle,
        abs_err: r.abs_err / (2.0 * PI),
    })
}

/// The K-fixed vector `x ↦ (|x|/2)^{1/2} (1 + x²/4)^{−(1+λ)/2}` on `V'`
/// (`λ` in ρ-units), written on the orbits `x = ω·2e^{−u}`:
/// `u ↦ e^{−u/2} (1 + e^{−2u})^{−(1+λ)/2}`.
pub fn k_fixed_adapted_vector(space: &RankOneSpace, lambda: &SpectralParam) -> Result<AdaptedVector, RankOneError> {
    if !space.is_sl2() {
        return Err(RankOneError::UnsupportedSpace(*space));
    }
    let lam = space.lambda_rho(lambda);
    let expo = -(1.0 + lam) / 2.0;
    let profile = move |_: Orbit, u: f64| -> Complex64 {
        // log(1 + e^{−2u}) stays accurate for u of either sign
        let log1p = if u > 0.0 {
            (-2.0 * u).exp().ln_1p()
        } else {
            -2.0 * u + (2.0 * u).exp().ln_1p()
        };
        (expo * log1p - u / 2.0).exp()
    };
    Ok(AdaptedVector::new(Arc::new(profile), *lambda, *space))
}

/// Value of the K-fixed vector at `x ∈ V'` computed from the closed forms
/// `ξ_{−ρ}(x)^{−1/2} e^{−(1+λ)ρH(x)}`.
pub fn k_fixed_from_closed_forms(lambda_rho: Complex64, x: f64) -> Result<Complex64, RankOneError> {
    let space = RankOneSpace::sl2();
    let v = VPoint::new(x, 0.0);
    let xi = xi_minus_rho(&space, v)?;
    let e = exp_rho_h(&space, v);
    Ok(xi.powf(-0.5) * (-(1.0 + lambda_rho) * e.ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constants() {
        for (p, q) in [(1, 0), (2, 0), (3, 0), (2, 1), (4, 3), (8, 7)] {
            let s = RankOneSpace::new(p, q).unwrap();
            assert_eq!(s.r(), (p + 2 * q) as f64 / 4.0);
            assert_eq!(s.c_h() * 4.0 * (p + 4 * q) as f64, 1.0);
            assert_eq!(s.exactness() == Exactness::Exact, q == 0);
            assert_eq!(s.rho(), 2.0 * s.r());
        }
        assert!(RankOneSpace::new(0, 1).is_err());
    }

    #[test]
    fn xi_and_exp_rho_h_examples() {
        let sl2 = RankOneSpace::sl2();
        for x in [0.3, 1.0, 2.0, 7.5] {
            let xi = xi_minus_rho(&sl2, VPoint::new(x, 0.0)).unwrap();
            assert!((xi - 2.0 / x).abs() < 1e-14 * xi);
            let e = exp_rho_h(&sl2, VPoint::new(x, 0.0));
            assert!((e - (1.0 + x * x / 4.0).sqrt()).abs() < 1e-14 * e);
        }
        assert_eq!(exp_rho_h(&sl2, VPoint::new(0.0, 0.0)), 1.0);
        assert_eq!(xi_minus_rho(&sl2, VPoint::new(0.0, 0.0)), Err(RankOneError::DegeneratePoint));

        // Level set c²|X|⁴ + 4c|Y|² = 1.
        let s = RankOneSpace::new(2, 1).unwrap();
        let ch = s.c_h();
        let x: f64 = 3.0;
        let y = ((1.0 - ch * ch * x.powi(4)) / (4.0 * ch)).sqrt();
        assert!((xi_minus_rho(&s, VPoint::new(x, y)).unwrap() - 1.0).abs() < 1e-14);

        // (2,1) with |X| = |Y| = 1, c = 1/24: (1/576 + 1/6)^{-1}.
        let v = xi_minus_rho(&s, VPoint::new(1.0, 1.0)).unwrap();
        let expected = 1.0 / (1.0 / 576.0 + 4.0 / 24.0);
        assert!((v - expected).abs() < 1e-13 * expected);
    }

    #[test]
    fn exp_rho_h_matches_matrix_iwasawa() {
        let sl2 = RankOneSpace::sl2();
        for y in [0.1, 0.5, 1.0, 3.0, -2.0] {
            let g = [[1.0, 0.0], [y, 1.0]];
            let d = iwasawa_decompose(&g).unwrap();
            let from_matrix = (sl2.rho() * d.t).exp();
            let closed = exp_rho_h(&sl2, VPoint::sl2_lower_unipotent(y));
            assert!((from_matrix - closed).abs() < 1e-12 * closed);
        }
    }

    #[test]
    fn iwasawa_examples() {
        let id = iwasawa_decompose(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!((id.k_angle, id.t, id.n_entry), (0.0, 0.0, 0.0));
        let d = iwasawa_decompose(&a_t(1.0)).unwrap();
        assert!(d.k_angle.abs() < 1e-15 && (d.t - 1.0).abs() < 1e-15 && d.n_entry.abs() < 1e-15);
        assert!(matches!(
            iwasawa_decompose(&[[2.0, 0.0], [0.0, 1.0]]),
            Err(RankOneError::NotUnimodular(_))
        ));
    }

    #[test]
    fn oracle_at_identity_and_weyl_symmetry() {
        for p in [1, 2, 3] {
            let s = RankOneSpace::new(p, 0).unwrap();
            let v = spherical_oracle(&s, &SpectralParam::unitary(0.7), 0.0).unwrap();
            assert!((v.value - 1.0).norm() < 1e-13);
            for nu in [c(0.5, 0.0), c(1.3, 0.2), c(0.0, 0.3)] {
                for t in [0.3, 1.0, 2.5] {
                    let a = spherical_oracle(&s, &SpectralParam::geodesic(nu), t).unwrap().value;
                    let b = spherical_oracle(&s, &SpectralParam::geodesic(-nu), t).unwrap().value;
                    assert!((a - b).norm() < 1e-10, "p={p} nu={nu} t={t}");
                }
            }
        }
    }

    #[test]
    fn oracle_routes_agree_for_sl2() {
        let lam = SpectralParam::unitary(1.0);
        let a = spherical_oracle(&RankOneSpace::sl2(), &lam, 2.0).unwrap();
        let b = spherical_oracle_iwasawa(&lam, 2.0).unwrap();
        assert!((a.value - b.value).norm() < 1e-9, "{} vs {}", a.value, b.value);
        assert!(a.value.im.abs() < 1e-10);
    }

    #[test]
    fn oracle_frozen_values() {
        // 30-digit quadrature of the same integral.
        let sl2 = RankOneSpace::sl2();
        let v = spherical_oracle(&sl2, &SpectralParam::unitary(1.0), 2.0).unwrap().value;
        assert!((v.re - ORACLE_SL2_NU1_T2).abs() < 1e-11, "{v}");
    }

    const ORACLE_SL2_NU1_T2: f64 = 0.197_281_880_122_509_633;

    #[test]
    fn oracle_rejects_q_positive() {
        let s = RankOneSpace::new(2, 1).unwrap();
        assert!(matches!(
            spherical_oracle(&s, &SpectralParam::unitary(1.0), 1.0),
            Err(RankOneError::UnsupportedSpace(_))
        ));
    }

    #[test]
    fn k_fixed_vector_values() {
        let sl2 = RankOneSpace::sl2();
        let f = k_fixed_adapted_vector(&sl2, &SpectralParam::rho(c(0.0, 0.0))).unwrap();
        // x = 2 is u = 0
        assert!((f.eval(Orbit::Plus, 0.0) - c(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
        for lam in [c(0.0, 0.8), c(0.3, 0.4), c(-0.6, 0.0)] {
            let f = k_fixed_adapted_vector(&sl2, &SpectralParam::rho(lam)).unwrap();
            for u in [-3.0f64, -0.5, 0.0, 1.2, 4.0] {
                let x = 2.0 * (-u).exp();
                let closed = k_fixed_from_closed_forms(lam, x).unwrap();
                let got = f.eval(Orbit::Minus, u);
                assert!((closed - got).norm() < 1e-12 * closed.norm());
            }
        }
        assert!(k_fixed_adapted_vector(&RankOneSpace::new(3, 0).unwrap(), &SpectralParam::unitary(1.0)).is_err());
    }

    #[test]
    fn dilation_invariance_of_dx_over_x() {
        let bump = |x: f64| {
            let y = x.abs().ln() - 0.3;
            if y.abs() < 1.0 {
                (-1.0 / (1.0 - y * y)).exp() * (1.0 + 0.2 * x.signum())
            } else {
                0.0
            }
        };
        let cfg = QuadConfig::abs(1e-14);
        let total = |s: f64| {
            let pos = integrate(|x: f64| bump(s.exp() * x) / x, 0.05, 20.0, &cfg).unwrap().value;
            let neg = integrate(|x: f64| bump(-s.exp() * x) / x, 0.05, 20.0, &cfg).unwrap().value;
            pos + neg
        };
        let base = total(0.0);
        for s in [-0.7, 0.4, 1.1] {
            assert!((total(s) - base).abs() < 1e-10 * base.abs());
        }
    }

    #[test]
    fn dilations_act_freely() {
        for x in [-3.0, -0.1, 0.5, 2.0] {
            for s in [-1.0f64, 0.25, 2.0] {
                assert!(s.exp() * x != x);
            }
        }
    }

    #[test]
    fn xi_homogeneity_under_dilation() {
        let sl2 = RankOneSpace::sl2();
        for x in [0.4, 1.5] {
            for s in [-1.0f64, 0.3, 2.0] {
                let a = xi_minus_rho(&sl2, VPoint::new(s.exp() * x, 0.0)).unwrap();
                let b = (-s).exp() * xi_minus_rho(&sl2, VPoint::new(x, 0.0)).unwrap();
                assert!((a - b).abs() < 1e-12 * b);
            }
        }
    }
}
