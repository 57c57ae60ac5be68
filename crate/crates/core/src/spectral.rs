//! The spectral parameter and its three unit conventions.
//!
//! Everything internal runs on the geodesic-dual parameter `ν`: with `t` the
//! geodesic coordinate (`α(H) = 1`), `φ_ν(a_t) ~ c(ν) e^{(iν − ρ)t}` and `ν` is
//! real on the unitary axis. The other conventions write the complex shift
//! `λ_C` of `∫_K a(gk)^{λ − ρ} dk` either in multiples of `ρ` or of `α`:
//!
//! | units      | stored value | `ν`        |
//! |------------|--------------|------------|
//! | `Rho`      | `λ_C / ρ`    | `−iρ·z`    |
//! | `Alpha`    | `λ_C / α`    | `−i·z`     |
//! | `Geodesic` | `ν`          | `z`        |
//!
//! So the unitary axis is `Re z = 0` for `Rho`/`Alpha` and `Im z = 0` for
//! `Geodesic`, and the strip `|Re λ_ρ| < 1` is `|Im ν| < ρ`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Units {
    Rho,
    Alpha,
    Geodesic,
}

impl Units {
    pub fn name(self) -> &'static str {
        match self {
            Units::Rho => "rho",
            Units::Alpha => "alpha",
            Units::Geodesic => "geodesic",
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Units {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rho" => Ok(Units::Rho),
            "alpha" => Ok(Units::Alpha),
            "geodesic" => Ok(Units::Geodesic),
            other => Err(format!("unknown units '{other}' (expected rho, alpha or geodesic)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam {
    pub value: Complex64,
    pub units: Units,
}

impl SpectralParam {
    pub fn new(value: Complex64, units: Units) -> Self {
        Self { value, units }
    }

    pub fn rho(value: Complex64) -> Self {
        Self::new(value, Units::Rho)
    }

    pub fn alpha(value: Complex64) -> Self {
        Self::new(value, Units::Alpha)
    }

    /// Geodesic-dual parameter; real `nu` is unitary.
    pub fn geodesic(nu: Complex64) -> Self {
        Self::new(nu, Units::Geodesic)
    }

    /// Real geodesic-dual parameter, the unitary axis.
    pub fn unitary(nu: f64) -> Self {
        Self::geodesic(Complex64::new(nu, 0.0))
    }

    /// Real `λ` in ρ-units (complementary-series side).
    pub fn real_rho(lambda: f64) -> Self {
        Self::rho(Complex64::new(lambda, 0.0))
    }

    /// The geodesic-dual parameter `ν` for a space with half-sum `rho`.
    pub fn nu(&self, rho: f64) -> Complex64 {
        let i = Complex64::i();
        match self.units {
            Units::Rho => -i * rho * self.value,
            Units::Alpha => -i * self.value,
            Units::Geodesic => self.value,
        }
    }

    /// `λ` in ρ-units.
    pub fn lambda_rho(&self, rho: f64) -> Complex64 {
        Complex64::i() * self.nu(rho) / rho
    }

    pub fn from_nu(nu: Complex64, units: Units, rho: f64) -> Self {
        let i = Complex64::i();
        let value = match units {
            Units::Rho => i * nu / rho,
            Units::Alpha => i * nu,
            Units::Geodesic => nu,
        };
        Self { value, units }
    }

    pub fn to_units(&self, units: Units, rho: f64) -> Self {
        if units == self.units {
            return *self;
        }
        Self::from_nu(self.nu(rho), units, rho)
    }

    /// Weyl image `λ ↦ −λ`, the same in every convention.
    pub fn weyl(&self) -> Self {
        Self::new(-self.value, self.units)
    }

    /// Contragredient `λ' = −conj λ` (ρ-units), i.e. `ν' = conj ν`.
    pub fn contragredient(&self) -> Self {
        let value = match self.units {
            Units::Rho | Units::Alpha => -self.value.conj(),
            Units::Geodesic => self.value.conj(),
        };
        Self::new(value, self.units)
    }

    /// On the unitary axis: `Re λ_ρ = 0` within `tol`.
    pub fn is_unitary(&self, rho: f64, tol: f64) -> bool {
        self.lambda_rho(rho).re.abs() <= tol
    }

    /// Real in ρ-units: `Im λ_ρ = 0` within `tol`.
    pub fn is_real_rho(&self, rho: f64, tol: f64) -> bool {
        self.lambda_rho(rho).im.abs() <= tol
    }

    /// Inside the open strip `|Re λ_ρ| < 1`.
    pub fn in_strip(&self, rho: f64) -> bool {
        self.lambda_rho(rho).re.abs() < 1.0
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.units)
    }
}

/// Parses `RE`, `IMi`, `RE+IMi` or `RE-IMi`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    let v = Complex64::from_str(t).map_err(|_| format!("cannot parse complex number '{s}'"))?;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(format!("complex number '{s}' is not finite"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn conversion_table() {
        let rho = 0.5;
        let p = SpectralParam::rho(c(0.0, 2.0));
        assert!((p.nu(rho) - c(1.0, 0.0)).norm() < 1e-15);
        let a = SpectralParam::alpha(c(0.0, 1.0));
        assert!((a.nu(rho) - c(1.0, 0.0)).norm() < 1e-15);
        let g = p.to_units(Units::Geodesic, rho);
        assert!((g.value - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn conversions_are_involutive() {
        let rho = 1.5;
        let p = SpectralParam::rho(c(0.3, -0.7));
        for u in [Units::Rho, Units::Alpha, Units::Geodesic] {
            for w in [Units::Rho, Units::Alpha, Units::Geodesic] {
                let back = p.to_units(u, rho).to_units(w, rho).to_units(Units::Rho, rho);
                assert!((back.value - p.value).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn contragredient_rules() {
        let rho = 0.5;
        let imaginary = SpectralParam::rho(c(0.0, 0.7));
        assert_eq!(imaginary.contragredient().value, imaginary.value);
        let real = SpectralParam::real_rho(0.5);
        assert_eq!(real.contragredient().value, c(-0.5, 0.0));
        let g = SpectralParam::rho(c(0.3, 0.4)).to_units(Units::Geodesic, rho);
        let back = g.contragredient().to_units(Units::Rho, rho);
        assert!((back.value - c(-0.3, 0.4)).norm() < 1e-15);
    }

    #[test]
    fn strip_and_axes() {
        let rho = 1.0;
        assert!(SpectralParam::unitary(3.0).is_unitary(rho, 1e-15));
        assert!(SpectralParam::real_rho(0.9).in_strip(rho));
        assert!(!SpectralParam::real_rho(1.0).in_strip(rho));
        assert!(SpectralParam::geodesic(c(0.0, 0.99)).in_strip(rho));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_complex("0").unwrap(), c(0.0, 0.0));
        assert_eq!(parse_complex("1.0i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("0.3+0.4i").unwrap(), c(0.3, 0.4));
        assert_eq!(parse_complex("0-3.2i").unwrap(), c(0.0, -3.2));
        assert_eq!(parse_complex("-0.5").unwrap(), c(-0.5, 0.0));
        assert!(parse_complex("abc").is_err());
        assert!("kelvin".parse::<Units>().is_err());
        assert_eq!("alpha".parse::<Units>().unwrap(), Units::Alpha);
    }
}
