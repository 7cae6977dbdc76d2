//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export is a thin wrapper over a plain function returning a JSON
//! string, so the logic is testable natively.

use std::f64::consts::PI;

use lensmatch::approximation::gap_sequence;
use lensmatch::complex_core::{RationalFunction, RealPolynomial};
use lensmatch::conformal::{lens_derivative_at_zero, lens_map, LensParams};
use lensmatch::hinf_norm::{hinf_norm, DiagonalController, ProblemInstance};
use lensmatch::interpolation::{solve_gamma, DEFAULT_TOL};
use lensmatch::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_SAMPLES: usize = 4096;
const MAX_ORDER: usize = 60;

fn pt(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn curve(params: &LensParams, n: usize, at: impl Fn(f64) -> Complex64) -> Result<Value, String> {
    (0..=n)
        .map(|m| lens_map(params, at(m as f64 / n as f64)).map(pt).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .map(Value::from)
}

/// Images under `F_gamma` of the unit circle, `rings` concentric circles and
/// `spokes` radii.
pub fn lens_geometry_json(gamma: f64, rings: usize, spokes: usize, samples: usize) -> Result<String, String> {
    let params = LensParams::new(gamma).map_err(|e| e.to_string())?;
    let n = samples.clamp(16, MAX_SAMPLES);
    let boundary = curve(&params, n, |s| Complex64::from_polar(1.0, 2.0 * PI * s))?;
    let mut circles = Vec::new();
    for k in 1..=rings.min(32) {
        let r = k as f64 / (rings.min(32) + 1) as f64;
        circles.push(curve(&params, n, |s| Complex64::from_polar(r, 2.0 * PI * s))?);
    }
    let mut radii = Vec::new();
    for k in 0..spokes.min(64) {
        let t = 2.0 * PI * k as f64 / spokes.min(64) as f64;
        radii.push(curve(&params, n / 4, |s| Complex64::from_polar(s, t))?);
    }
    Ok(json!({
        "gamma": gamma,
        "alpha": params.alpha(),
        "corner": params.tan_alpha(),
        "derivative_at_zero": lens_derivative_at_zero(&params),
        "boundary": boundary,
        "circles": circles,
        "radii": radii,
    })
    .to_string())
}

fn linear_instance(c: f64) -> Result<ProblemInstance, String> {
    if !c.is_finite() || c == 0.0 {
        return Err("c must be finite and nonzero".into());
    }
    ProblemInstance::new(
        RationalFunction::polynomial(RealPolynomial::new(vec![0.0, c])),
        RationalFunction::polynomial(RealPolynomial::new(vec![0.0, 0.0, 1.0])),
    )
    .map_err(|e| e.to_string())
}

/// Solves `a = c w`, `b = w^2` and samples the optimal closed loop on the
/// unit circle.
pub fn solve_linear_json(c: f64, samples: usize) -> Result<String, String> {
    let inst = linear_instance(c)?;
    let res = solve_gamma(&inst, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let s = res.s_star.clone().ok_or("optimal controller not constructible")?;
    let n = samples.clamp(16, MAX_SAMPLES);
    let image = (0..=n)
        .map(|m| s.closed_loop(Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64)).map(pt))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let zero_cost = hinf_norm(&inst, &DiagonalController::zero(), 1e-10).map_err(|e| e.to_string())?.value;
    let optimal_cost = hinf_norm(&inst, &DiagonalController::optimal(s), 1e-8).map_err(|e| e.to_string())?.value;
    Ok(json!({
        "c": c,
        "gamma_star": res.gamma_star,
        "alpha": res.params().alpha(),
        "p": res.p.as_ref().map(|p| p.to_string()),
        "zero_controller_cost": zero_cost,
        "optimal_cost": optimal_cost,
        "closed_loop_boundary": image,
    })
    .to_string())
}

/// Gap table for `a = c w`, `b = w^2` at orders `1..=max_order`.
pub fn gap_table_json(c: f64, max_order: usize) -> Result<String, String> {
    let inst = linear_instance(c)?;
    let res = solve_gamma(&inst, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let orders: Vec<usize> = (1..=max_order.clamp(1, MAX_ORDER)).collect();
    let rows = gap_sequence(&inst, &res, &orders).map_err(|e| e.to_string())?;
    let rows: Vec<Value> =
        rows.iter().map(|g| json!({ "order": g.order, "norm": g.norm_value, "excess": g.excess })).collect();
    Ok(json!({ "c": c, "gamma_star": res.gamma_star, "rows": rows }).to_string())
}

#[wasm_bindgen]
pub fn lens_geometry(gamma: f64, rings: usize, spokes: usize, samples: usize) -> Result<String, JsValue> {
    lens_geometry_json(gamma, rings, spokes, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve_linear(c: f64, samples: usize) -> Result<String, JsValue> {
    solve_linear_json(c, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn gap_table(c: f64, max_order: usize) -> Result<String, JsValue> {
    gap_table_json(c, max_order).map_err(|e| JsValue::from_str(&e))
}
