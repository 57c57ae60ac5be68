//! Zonal spherical functions on rank-one Riemannian symmetric spaces.
//!
//! The central object is the Bochner density `m(λ, υ)`: the spherical function
//! restricted to the split torus `A` is its Fourier transform,
//!
//! ```text
//! φ_λ(a_t) = ∫ e^{-iυt} m(λ, υ) dυ ,
//! ```
//!
//! and the representation stays valid for complex `t` inside the tube
//! `|Im t| < π`. Every route here (Bochner–Fourier, residue series, the
//! `K`-integral, principal-series matrix coefficients) evaluates the same
//! function in the same geodesic coordinate, so they can be checked against
//! each other.
//!
//! Conventions are collected in [`spectral`]; the canonical spectral parameter
//! is the geodesic-dual `ν` for which `φ_ν(a_t) ~ c(ν) e^{(iν-ρ)t}`.

// `!(x < y)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Lanczos and quadrature tables are kept as published.
#![allow(clippy::excessive_precision)]

pub mod bochner;
pub mod quad;
pub mod rankone;
pub mod repsim;
pub mod specfun;
pub mod spectral;
pub mod spherical;
pub mod transforms;

pub use num_complex::Complex64;
pub use rankone::RankOneSpace;
pub use spectral::{SpectralParam, Units};
