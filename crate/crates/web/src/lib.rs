//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes a symbol as JSON text and returns plain numbers or a JSON string, so the
//! page needs no glue beyond `wasm-bindgen`.

use num_complex::Complex64;
use serde_json::json;
use wasm_bindgen::prelude::*;

use schur_scope::bounds::{BoundsConfig, Verifier};
use schur_scope::carleson::{pullback_window_mass, BoundaryRes};
use schur_scope::geometry::CarlesonWindow;
use schur_scope::nevanlinna::counting_function;
use schur_scope::SchurMap;

fn load(symbol: &str) -> Result<SchurMap, String> {
    SchurMap::parse_json(symbol)
        .and_then(SchurMap::certified)
        .map_err(|e| e.to_string())
}

/// `N_φ` on an `n × n` grid over `[-1, 1]²`, row-major from the top left.
/// Points outside the disk, or too close to `φ(0)`, are `NaN`.
pub fn counting_grid(symbol: &str, n: usize) -> Result<Vec<f64>, String> {
    let map = load(symbol)?;
    let n = n.clamp(2, 400);
    let step = 2.0 / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let w = Complex64::new(-1.0 + j as f64 * step, 1.0 - i as f64 * step);
            out.push(if w.norm() < 1.0 {
                counting_function(&map, w).unwrap_or(f64::NAN)
            } else {
                f64::NAN
            });
        }
    }
    Ok(out)
}

/// Boundary arcs whose image lands in the window at `angle` of size `h`, with their total
/// normalized length.
pub fn window_arcs(symbol: &str, angle: f64, h: f64) -> Result<String, String> {
    let map = load(symbol)?;
    let window = CarlesonWindow::at_angle(angle, h).map_err(|e| e.to_string())?;
    let arcs = pullback_window_mass(&map, &window, BoundaryRes::default());
    Ok(json!({
        "arcs": arcs.arcs,
        "mass": arcs.mass,
        "unresolved_mass": arcs.unresolved_mass,
        "resolved": arcs.warning.is_none(),
    })
    .to_string())
}

/// Rows `{h, rho, nu, ratio_up, ratio_down}` over `levels` dyadic scales below the admissible
/// limit.
pub fn scale_curve(symbol: &str, levels: usize) -> Result<String, String> {
    let map = load(symbol)?;
    let limit = (1.0 - map.at_zero().norm()) / 16.0;
    let mut h = 1.0;
    while h >= limit {
        h /= 2.0;
    }
    let hs: Vec<f64> = (0..levels.clamp(1, 12)).map(|k| h / 2f64.powi(k as i32)).collect();
    let rows = Verifier::new(&map, BoundsConfig::default())
        .equivalence_sweep(&hs)
        .map_err(|e| e.to_string())?;
    let rows: Vec<_> = rows
        .iter()
        .map(|r| json!({"h": r.h, "rho": r.rho, "nu": r.nu, "ratio_up": r.ratio_up, "ratio_down": r.ratio_down}))
        .collect();
    Ok(serde_json::Value::Array(rows).to_string())
}

#[wasm_bindgen(js_name = countingGrid)]
pub fn counting_grid_js(symbol: &str, n: usize) -> Result<Vec<f64>, JsError> {
    counting_grid(symbol, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = windowArcs)]
pub fn window_arcs_js(symbol: &str, angle: f64, h: f64) -> Result<String, JsError> {
    window_arcs(symbol, angle, h).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = scaleCurve)]
pub fn scale_curve_js(symbol: &str, levels: usize) -> Result<String, JsError> {
    scale_curve(symbol, levels).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LENS: &str = r#"{"type": "polynomial", "coeffs": [[0.5, 0], [0.5, 0]]}"#;
    const SQUARE: &str = r#"{"type": "polynomial", "coeffs": [[0, 0], [0, 0], [1, 0]]}"#;

    #[test]
    fn grid_matches_the_square() {
        let n = 5;
        let g = counting_grid(SQUARE, n).unwrap();
        assert_eq!(g.len(), n * n);
        assert!(g[0].is_nan());
        let w = 0.5f64;
        assert!((g[2 * n + 3] - (1.0 / w).ln()).abs() < 1e-9, "{}", g[2 * n + 3]);
        assert!(g[2 * n + 2].is_nan());
    }

    #[test]
    fn lens_window_arcs() {
        let v: serde_json::Value = serde_json::from_str(&window_arcs(LENS, 0.0, 0.1).unwrap()).unwrap();
        let mass = v["mass"].as_f64().unwrap();
        assert!((mass - 0.2 / std::f64::consts::PI).abs() < 1e-9, "{mass}");
        assert_eq!(v["arcs"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn curve_is_descending() {
        let v: serde_json::Value = serde_json::from_str(&scale_curve(LENS, 4).unwrap()).unwrap();
        let hs: Vec<f64> = v.as_array().unwrap().iter().map(|r| r["h"].as_f64().unwrap()).collect();
        assert_eq!(hs.len(), 4);
        assert!(hs.windows(2).all(|p| p[0] > p[1]));
        assert!(load(r#"{"type": "polynomial", "coeffs": [[0, 0], [2, 0]]}"#).is_err());
    }
}
