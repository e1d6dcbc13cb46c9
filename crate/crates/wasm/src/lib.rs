//! Text-in, text-out bindings for the browser demo.

use pml::sylres::{resultant, BivarPoly};
use pml::{detred, polmat, PolMat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wasm_bindgen::prelude::*;

pub fn mul_text(a: &str, b: &str) -> Result<String, String> {
    let a = PolMat::from_text(a).map_err(|e| format!("A: {e}"))?;
    let b = PolMat::from_text(b).map_err(|e| format!("B: {e}"))?;
    Ok(polmat::pm_mul(&a, &b).map_err(|e| e.to_string())?.to_text())
}

pub fn det_text(a: &str) -> Result<String, String> {
    let a = PolMat::from_text(a).map_err(|e| format!("A: {e}"))?;
    Ok(detred::det(&a).map_err(|e| e.to_string())?.to_text())
}

pub fn resultant_text(f: &str, g: &str, seed: u64) -> Result<String, String> {
    let f = BivarPoly::from_text(f).map_err(|e| format!("F: {e}"))?;
    let g = BivarPoly::from_text(g).map_err(|e| format!("G: {e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(resultant(&f, &g, None, &mut rng).map_err(|e| e.to_string())?.to_text())
}

/// Product of two polynomial matrices.
#[wasm_bindgen]
pub fn mul(a: &str, b: &str) -> Result<String, JsValue> {
    mul_text(a, b).map_err(|e| JsValue::from_str(&e))
}

/// Determinant of a square polynomial matrix.
#[wasm_bindgen]
pub fn det(a: &str) -> Result<String, JsValue> {
    det_text(a).map_err(|e| JsValue::from_str(&e))
}

/// `Res_z(F, G)`.
#[wasm_bindgen(js_name = resultant)]
pub fn resultant_js(f: &str, g: &str, seed: u32) -> Result<String, JsValue> {
    resultant_text(f, g, seed as u64).map_err(|e| JsValue::from_str(&e))
}
