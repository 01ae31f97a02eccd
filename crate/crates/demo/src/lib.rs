//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes and returns strings: matrices in the plain text
//! format, results as JSON. The `*_json` functions hold the logic and are
//! callable natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use staircase::constructions::{build, Family};
use staircase::longest::{longest_staircase, longest_value_length, StProfile, TurnBudget};
use staircase::matrix::{parse_matrix, random_matrix, serialize_matrix, MatrixFormat};
use staircase::witness::square_witness;

/// Largest number of cells the page accepts.
pub const MAX_CELLS: usize = 200 * 200;

fn budget(max_turns: i32) -> TurnBudget {
    if max_turns < 0 {
        TurnBudget::Unbounded
    } else {
        TurnBudget::Bounded(max_turns as usize)
    }
}

fn parse(text: &str) -> Result<staircase::Matrix, String> {
    let m = parse_matrix(text.trim()).map_err(|e| e.to_string())?;
    if m.rows() * m.cols() > MAX_CELLS {
        return Err(format!("matrix has {} cells, the demo accepts at most {MAX_CELLS}", m.rows() * m.cols()));
    }
    Ok(m)
}

/// Matrix text of a construction.
pub fn construct_text(family: &str, n: usize, cols: usize) -> Result<String, String> {
    let family: Family = family.parse()?;
    if n * cols > MAX_CELLS {
        return Err(format!("at most {MAX_CELLS} cells"));
    }
    let m = build(family, n, cols).map_err(|e| e.to_string())?;
    Ok(serialize_matrix(&m, MatrixFormat::Plain))
}

pub fn random_text(n: usize, cols: usize, seed: u64) -> Result<String, String> {
    if n * cols > MAX_CELLS {
        return Err(format!("at most {MAX_CELLS} cells"));
    }
    let m = random_matrix(n, cols, seed, 0.5).map_err(|e| e.to_string())?;
    Ok(serialize_matrix(&m, MatrixFormat::Plain))
}

/// Profile and one longest staircase under the turn limit (negative means
/// no limit).
pub fn longest_json(text: &str, max_turns: i32) -> Result<String, String> {
    let m = parse(text)?;
    let b = budget(max_turns);
    let profile = StProfile::from_parts(longest_value_length(&m, 0, b), longest_value_length(&m, 1, b));
    let s = longest_staircase(&m, b);
    Ok(json!({"profile": profile, "staircase": s}).to_string())
}

/// Witness with at most three turns for a square matrix, the bound it
/// certifies, and every staircase the analysis considered.
pub fn square_witness_json(text: &str) -> Result<String, String> {
    let m = parse(text)?;
    let (s, trace) = square_witness(&m).map_err(|e| e.to_string())?;
    let candidates: Vec<_> = trace.candidates().into_iter().cloned().collect();
    Ok(json!({
        "staircase": s,
        "case": trace.case,
        "bound": trace.bound,
        "candidates": candidates,
        "trace": trace,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn construct(family: &str, n: usize, cols: usize) -> Result<String, JsValue> {
    construct_text(family, n, cols).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn random(n: usize, cols: usize, seed: u32) -> Result<String, JsValue> {
    random_text(n, cols, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn longest(text: &str, max_turns: i32) -> Result<String, JsValue> {
    longest_json(text, max_turns).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = squareWitness)]
pub fn square_witness_export(text: &str) -> Result<String, JsValue> {
    square_witness_json(text).map_err(|e| JsValue::from_str(&e))
}
