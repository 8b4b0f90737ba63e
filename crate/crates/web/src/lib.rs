//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function returns a flat `Float64Array`; the row layout is
//! given in its doc comment. Lengths are in units of the plate separation.

use abplates::{
    asymptotic_phase, circular_phase, effective_vector_potential, image_sum_oracle,
    screened_coulomb, ChargePair, EvalPoint, PlateGeometry, SeriesControl,
};
use wasm_bindgen::prelude::*;

const IMAGES: usize = 2000;

fn unit() -> PlateGeometry {
    PlateGeometry::new(1.0).expect("unit separation is valid")
}

fn grid(min: f64, max: f64, points: usize, log: bool) -> Result<Vec<f64>, String> {
    if !(2..=100_000).contains(&points) {
        return Err(format!("points must lie in [2, 100000], got {points}"));
    }
    if !(min > 0.0 && max > min && max.is_finite()) {
        return Err(format!("need 0 < min < max, got [{min}, {max}]"));
    }
    let span = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let t = i as f64 / span;
            if log {
                (min.ln() + (max / min).ln() * t).exp()
            } else {
                min + (max - min) * t
            }
        })
        .collect())
}

/// Rows `[R, f, f_asymptote]` for circular orbits at height `z`.
pub fn phase_curve_rows(r_min: f64, r_max: f64, points: usize, z: f64) -> Result<Vec<f64>, String> {
    let g = unit();
    let ctl = SeriesControl::default();
    let mut out = Vec::with_capacity(3 * points);
    for r in grid(r_min, r_max, points, true)? {
        let p = circular_phase(&g, r, z, &ctl).map_err(|e| e.to_string())?;
        out.extend([r, p.f, asymptotic_phase(&g, r, z)]);
    }
    Ok(out)
}

/// Row-major `n_z x n_rho` map of `rho a_theta` (the enclosed fraction of
/// the free-space circulation over `2 pi`), `rho` in `(0, rho_max]`, `z` in `[0, 1]`.
pub fn field_map_rows(rho_max: f64, n_rho: usize, n_z: usize) -> Result<Vec<f64>, String> {
    if !(2..=2000).contains(&n_z) {
        return Err(format!("n_z must lie in [2, 2000], got {n_z}"));
    }
    let rhos = grid(rho_max / n_rho.max(1) as f64, rho_max, n_rho, false)?;
    let g = unit();
    let ctl = SeriesControl::with_rel_tol(1e-8);
    let mut out = Vec::with_capacity(n_rho * n_z);
    for j in 0..n_z {
        let z = j as f64 / (n_z - 1) as f64;
        for &rho in &rhos {
            let s = effective_vector_potential(&g, EvalPoint::new(rho, z), &ctl)
                .map_err(|e| e.to_string())?;
            out.push(rho * s.a_theta);
        }
    }
    Ok(out)
}

/// Rows `[rho, h2, h2_images]` for charges at heights `z1`, `z2`.
pub fn coulomb_rows(
    z1: f64,
    z2: f64,
    rho_min: f64,
    rho_max: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let g = unit();
    let ctl = SeriesControl::default();
    let mut out = Vec::with_capacity(3 * points);
    for rho in grid(rho_min, rho_max, points, false)? {
        let pair = ChargePair::new(z1, z2, rho);
        let h2 = screened_coulomb(&g, pair, &ctl)
            .map_err(|e| e.to_string())?
            .h2;
        let images = image_sum_oracle(&g, pair, IMAGES)
            .map_err(|e| e.to_string())?
            .value;
        out.extend([rho, h2, images]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn phase_curve(r_min: f64, r_max: f64, points: usize, z: f64) -> Result<Vec<f64>, JsValue> {
    phase_curve_rows(r_min, r_max, points, z).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn field_map(rho_max: f64, n_rho: usize, n_z: usize) -> Result<Vec<f64>, JsValue> {
    field_map_rows(rho_max, n_rho, n_z).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn coulomb(
    z1: f64,
    z2: f64,
    rho_min: f64,
    rho_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    coulomb_rows(z1, z2, rho_min, rho_max, points).map_err(|e| JsValue::from_str(&e))
}
