//! Browser bindings. Each export returns a flat `Float64Array` of
//! interleaved columns so the page can plot without a JSON round trip.

use wasm_bindgen::prelude::*;

use zonal::bochner::bochner_density;
use zonal::rankone::spherical_oracle;
use zonal::spherical::phi_via_bochner;
use zonal::{Complex64, RankOneSpace, SpectralParam, Units};

fn err<E: std::fmt::Display>(e: E) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn setup(p: u32, q: u32, re: f64, im: f64, units: &str) -> Result<(RankOneSpace, SpectralParam), JsValue> {
    let space = RankOneSpace::new(p, q).map_err(err)?;
    let units: Units = units.parse().map_err(err)?;
    Ok((space, SpectralParam::new(Complex64::new(re, im), units)))
}

fn samples(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

/// `[t, φ via Bochner, φ oracle]` triples on `[0, t_max]`; the oracle column is
/// NaN where it does not apply (q > 0).
#[wasm_bindgen]
pub fn phi_curve(p: u32, q: u32, re: f64, im: f64, units: &str, t_max: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    let (space, lam) = setup(p, q, re, im, units)?;
    let mut out = Vec::with_capacity(3 * n);
    for t in samples(0.0, t_max, n) {
        let b = phi_via_bochner(&space, &lam, Complex64::new(t, 0.0)).map_err(err)?.value.re;
        let o = if q == 0 {
            spherical_oracle(&space, &lam, t).map_err(err)?.value.re
        } else {
            f64::NAN
        };
        out.extend([t, b, o]);
    }
    Ok(out)
}

/// `[υ, m(λ, υ)]` pairs on `[−u_max, u_max]`.
#[wasm_bindgen]
pub fn density_curve(p: u32, q: u32, re: f64, im: f64, units: &str, u_max: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    let (space, lam) = setup(p, q, re, im, units)?;
    let d = bochner_density(&space, &lam).map_err(err)?;
    let mut out = Vec::with_capacity(2 * n);
    for u in samples(-u_max, u_max, n) {
        out.extend([u, d.eval(u).map_err(err)?.re]);
    }
    Ok(out)
}

/// `[y, Re φ(iy)]` pairs up to `gap` below the tube radius, where φ blows up
/// logarithmically.
#[wasm_bindgen]
pub fn tube_profile(p: u32, q: u32, re: f64, im: f64, units: &str, gap: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    let (space, lam) = setup(p, q, re, im, units)?;
    let top = space.tube_radius() - gap.max(1e-3);
    let mut out = Vec::with_capacity(2 * n);
    for y in samples(0.0, top, n) {
        out.extend([y, phi_via_bochner(&space, &lam, Complex64::new(0.0, y)).map_err(err)?.value.re]);
    }
    Ok(out)
}
