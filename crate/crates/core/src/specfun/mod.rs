//! Scalar special functions: complex Gamma, Beta, Pochhammer and the Gauss
//! hypergeometric function on the real line.

mod gamma;
mod hyp2f1;

pub use gamma::{
    beta, gamma, gamma_pole_index, gamma_ratio, gamma_real, gamma_residue, ln_gamma, pochhammer,
    rgamma, sin_pi, stirling_modulus, POLE_TOLERANCE,
};
pub use hyp2f1::{gauss_2f1, gauss_2f1_with, quadratic_transform_check};

use thiserror::Error;

/// Failures of the scalar kernels. Nothing here ever returns NaN quietly.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("Gamma has a pole at z = -{0}")]
    PoleOfGamma(u64),
    #[error("lower parameter c is a non-positive integer")]
    ParameterPole,
    #[error("2F1 diverges at z = 1 since Re(c - a - b) <= 0")]
    DivergesAtOne,
    #[error("series did not converge within {0} terms")]
    BudgetExceeded(usize),
    #[error("c - a - b is an integer; the logarithmic connection case is not supported")]
    DegenerateConnection,
    #[error("argument z = {0} lies outside the supported range z <= 1")]
    OutOfDomain(f64),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("invalid series budget: {0}")]
    InvalidBudget(&'static str),
}

/// Term cap and stopping tolerance for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesBudget {
    pub max_terms: usize,
    pub rel_tol: f64,
}

impl SeriesBudget {
    pub fn new(max_terms: usize, rel_tol: f64) -> Result<Self, SpecFunError> {
        if max_terms == 0 || max_terms > 1_000_000 {
            return Err(SpecFunError::InvalidBudget("max_terms must be in 1..=1e6"));
        }
        if !(rel_tol >= 8.0 * f64::EPSILON) || !rel_tol.is_finite() {
            return Err(SpecFunError::InvalidBudget("rel_tol must be at least 8 eps"));
        }
        Ok(Self { max_terms, rel_tol })
    }
}

impl Default for SeriesBudget {
    fn default() -> Self {
        Self {
            max_terms: 20_000,
            rel_tol: 2e-15,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_validation() {
        assert!(SeriesBudget::new(0, 1e-10).is_err());
        assert!(SeriesBudget::new(2_000_000, 1e-10).is_err());
        assert!(SeriesBudget::new(100, f64::EPSILON).is_err());
        assert!(SeriesBudget::new(100, 8.0 * f64::EPSILON).is_ok());
        assert!(SeriesBudget::new(100, f64::NAN).is_err());
    }
}
