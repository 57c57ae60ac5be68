//! Complex Gamma, log-Gamma and friends.
//!
//! `ln_gamma` uses a 15-term Lanczos sum (`g = 607/128`) on `Re z >= 1/2` and
//! the reflection formula below that line. The reflected value is moved onto
//! the principal branch by comparing its imaginary part with the upward
//! recurrence, so `ln_gamma` is continuous off the negative real axis and
//! real on the positive one.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::SpecFunError;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// `g + 1/2` for `g = 607/128`.
const LANCZOS_SHIFT: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

/// Distance below which `z` counts as sitting on a pole of Γ.
pub const POLE_TOLERANCE: f64 = 1e-14;

/// Returns `Some(k)` when `z` is within [`POLE_TOLERANCE`] of `-k`.
pub fn gamma_pole_index(z: Complex64) -> Option<u64> {
    if z.re > POLE_TOLERANCE {
        return None;
    }
    let k = (-z.re).round();
    if (z.re + k).abs() <= POLE_TOLERANCE && z.im.abs() <= POLE_TOLERANCE {
        Some(k as u64)
    } else {
        None
    }
}

fn check_finite(z: Complex64) -> Result<(), SpecFunError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(SpecFunError::NonFinite("gamma argument"))
    }
}

fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for (j, c) in LANCZOS_COEFFS.iter().enumerate() {
        ser += *c / (z + (j + 1) as f64);
    }
    let shifted = z + LANCZOS_SHIFT;
    (z + 0.5) * shifted.ln() - shifted + LN_SQRT_2PI + ser.ln() - z.ln()
}

/// `sin(πz)` with exact reduction of the real part, so values next to the
/// integers keep full relative precision.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let f = z.re - n;
    let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let w = Complex64::new(PI * f, PI * z.im);
    w.sin() * sign
}

/// `ln sin(πz)` that stays finite for large `|Im z|` (imaginary part only
/// determined modulo 2π).
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return sin_pi(z).ln();
    }
    // sin(πz) = e^{∓iπz}(1 - e^{±2iπz}) / (±2i) for Im z ≷ 0
    let n = z.re.round();
    let w = Complex64::new(z.re - n, z.im);
    let sign_shift = Complex64::new(0.0, PI * n);
    let i = Complex64::i();
    let core = if w.im > 0.0 {
        -i * PI * w + (1.0 - (2.0 * i * PI * w).exp()).ln() - (-2.0 * i).ln()
    } else {
        i * PI * w + (1.0 - (-2.0 * i * PI * w).exp()).ln() - (2.0 * i).ln()
    };
    core + sign_shift
}

/// Principal branch of `log Γ(z)`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    check_finite(z)?;
    if let Some(k) = gamma_pole_index(z) {
        return Err(SpecFunError::PoleOfGamma(k));
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_lanczos(z));
    }
    let reflected = LN_PI - ln_sin_pi(z) - ln_gamma_lanczos(1.0 - z);
    // Branch: the recurrence ln Γ(z) = ln Γ(z+n) - Σ ln(z+k) is principal.
    let n = (0.5 - z.re).ceil() as usize;
    let mut reference = ln_gamma_lanczos(z + n as f64).im;
    for k in 0..n {
        reference -= (z + k as f64).arg();
    }
    let turns = ((reference - reflected.im) / (2.0 * PI)).round();
    Ok(Complex64::new(reflected.re, reflected.im + 2.0 * PI * turns))
}

/// Complex Γ(z).
pub fn gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    check_finite(z)?;
    if let Some(k) = gamma_pole_index(z) {
        return Err(SpecFunError::PoleOfGamma(k));
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_lanczos(z).exp());
    }
    if z.im.abs() < 20.0 {
        return Ok(PI / (sin_pi(z) * ln_gamma_lanczos(1.0 - z).exp()));
    }
    Ok(ln_gamma(z)?.exp())
}

/// `1/Γ(z)`, which is entire: zero on the poles of Γ.
pub fn rgamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    check_finite(z)?;
    if gamma_pole_index(z).is_some() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((-ln_gamma(z)?).exp())
}

/// Real Γ on the positive axis.
pub fn gamma_real(x: f64) -> Result<f64, SpecFunError> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

/// Residue of Γ at `-k`: `(-1)^k / k!`.
pub fn gamma_residue(k: u32) -> f64 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * (-ln_gamma_lanczos(Complex64::new(k as f64 + 1.0, 0.0)).re).exp()
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: Complex64, b: Complex64) -> Result<Complex64, SpecFunError> {
    Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
}

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// `Π Γ(num_i) / Π Γ(den_j)` evaluated in log space. A pole in the
/// denominator makes the ratio vanish; a pole in the numerator is an error.
pub fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64, SpecFunError> {
    for z in den {
        if gamma_pole_index(*z).is_some() {
            return Ok(Complex64::new(0.0, 0.0));
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for z in num {
        acc += ln_gamma(*z)?;
    }
    for z in den {
        acc -= ln_gamma(*z)?;
    }
    Ok(acc.exp())
}

/// Stirling envelope `√(2π) |y|^{x-1/2} e^{-π|y|/2}` of `|Γ(x+iy)|`.
pub fn stirling_modulus(x: f64, y: f64) -> f64 {
    (2.0 * PI).sqrt() * y.abs().powf(x - 0.5) * (-PI * y.abs() / 2.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_at_one_and_half() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        let half = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
    }

    #[test]
    fn poles_are_reported() {
        assert_eq!(ln_gamma(c(0.0, 0.0)), Err(SpecFunError::PoleOfGamma(0)));
        assert_eq!(ln_gamma(c(-3.0, 0.0)), Err(SpecFunError::PoleOfGamma(3)));
        assert!(ln_gamma(c(-3.0 + 1e-10, 0.0)).is_ok());
        assert_eq!(rgamma(c(-2.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn residues() {
        assert_eq!(gamma_residue(0), 1.0);
        assert!((gamma_residue(1) + 1.0).abs() < 1e-15);
        assert!((gamma_residue(3) + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn residue_matches_limit_of_scaled_gamma() {
        // (z+3)Γ(z) as z → -3, step halving, Richardson on the last pair.
        let mut h = 1e-2;
        let mut prev = f64::NAN;
        let mut last = f64::NAN;
        for _ in 0..12 {
            let z = c(-3.0 + h, 0.0);
            let v = (gamma(z).unwrap() * h).re;
            prev = last;
            last = v;
            h /= 2.0;
        }
        let extrapolated = 2.0 * last - prev;
        assert!((extrapolated - gamma_residue(3)).abs() < 1e-9);
    }

    #[test]
    fn reflection_near_integers_keeps_precision() {
        let z = c(-3.0 + 1e-9, 0.0);
        let h = z.re + 3.0;
        let g = gamma(z).unwrap().re;
        // Γ(-3+h) ≈ -1/(6h) (1 + h ψ(4)) to leading order
        assert!((g * h + 1.0 / 6.0).abs() < 1e-8, "{}", g * h);
    }

    #[test]
    fn branch_is_continuous_across_reflection_line() {
        for y in [0.3, 5.0, 30.0, 150.0] {
            let left = ln_gamma(c(0.5 - 1e-9, y)).unwrap();
            let right = ln_gamma(c(0.5 + 1e-9, y)).unwrap();
            assert!((left - right).norm() < 1e-6, "y={y}: {left} vs {right}");
        }
    }

    #[test]
    fn large_imaginary_part_reflection_is_finite() {
        let v = ln_gamma(c(-10.25, 180.0)).unwrap();
        assert!(v.re.is_finite() && v.im.is_finite());
        let rec = ln_gamma(c(-9.25, 180.0)).unwrap() - c(-10.25, 180.0).ln();
        let diff = v - rec;
        assert!(diff.re.abs() < 1e-10);
        assert!(diff.im.abs() < 1e-9);
    }

    #[test]
    fn frozen_principal_branch_values() {
        // 50-digit reference values of the principal log-Gamma.
        let cases = [
            (c(0.25, 25.0), c(-39.155_676_089_757_246_9, 55.079_613_216_396_414)),
            (c(-3.7, 12.0), c(-28.448_912_008_718_832_1, 10.503_944_949_788_414_1)),
            (c(-10.25, 180.0), c(-337.655_056_251_138_031, 737.525_586_915_129_443)),
        ];
        for (z, expected) in cases {
            let got = ln_gamma(z).unwrap();
            assert!((got - expected).norm() < 1e-11 * expected.norm(), "{z}: {got}");
            let rel = ((got - expected).exp() - 1.0).norm();
            assert!(rel < 1e-12, "{z}: exp rel err {rel}");
        }
    }

    #[test]
    fn stirling_decay_law() {
        for y in [20.0, 40.0, 80.0] {
            let g = gamma(c(0.25, y)).unwrap().norm();
            let ratio = g / stirling_modulus(0.25, y);
            assert!((ratio - 1.0).abs() < 0.02, "y={y} ratio={ratio}");
        }
    }

    #[test]
    fn pochhammer_and_beta() {
        let a = c(0.5, 0.2);
        let p = pochhammer(a, 4);
        let via = gamma(a + 4.0).unwrap() / gamma(a).unwrap();
        assert!((p - via).norm() / p.norm() < 1e-13);
        let b = beta(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((b.re - 1.0 / 12.0).abs() < 1e-15);
    }
}
