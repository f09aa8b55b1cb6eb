//! WebAssembly entry points for the demo page in `www/`.
//!
//! Every export takes and returns JSON text; failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use bmenet::io::{network_value, optimization_value, parse_distance_matrix, parse_network};
use bmenet::optimize::{minimize_with, Options};
use bmenet::rational;
use bmenet::vector::{network_vector, pairs};
use bmenet::Network;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive: n = 8 with a middle k is about 10^5 networks.
const WEB_BUDGET: u128 = 200_000;

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn describe_value(net: &Network) -> Value {
    let x = network_vector(net);
    let vector: Vec<Value> =
        pairs(net.n()).zip(x.entries()).map(|((i, j), v)| json!({"i": i, "j": j, "x": rational::format(v)})).collect();
    let sigma: Vec<Vec<usize>> = net.sigma_splits().splits().iter().map(|s| s.part()).collect();
    let orderings: Vec<Vec<usize>> = net.consistent_orderings().iter().map(|c| c.as_slice().to_vec()).collect();
    json!({
        "network": network_value(net),
        "vector": vector,
        "sigma": sigma,
        "orderings": orderings,
    })
}

/// Canonical form, vertex vector, displayed splits and consistent orderings.
pub fn describe_json(literal: &str) -> Result<Value, String> {
    let net = parse_network(literal).map_err(|e| e.to_string())?;
    Ok(describe_value(&net))
}

/// Twists bridge number `index` (in canonical order) and reports the drawing
/// before canonicalization alongside the unchanged network.
pub fn twist_json(literal: &str, index: usize) -> Result<Value, String> {
    let net = parse_network(literal).map_err(|e| e.to_string())?;
    let bridge = net.bridges().get(index).ok_or_else(|| format!("no bridge {index}; network has {}", net.k()))?;
    let drawing = net.twist(bridge).map_err(|e| e.to_string())?;
    let same = Network::new(&bmenet::CircularOrdering::new(&drawing.seq).map_err(|e| e.to_string())?, net.bridges())
        .map_err(|e| e.to_string())?;
    let mut v = describe_value(&same);
    v["drawing"] = json!(drawing.seq);
    v["bridge"] = json!(bridge.part());
    Ok(v)
}

/// Exact minimization over networks with `k` bridges of a pasted matrix.
pub fn minimize_text(matrix: &str, k: usize) -> Result<Value, String> {
    let parsed = parse_distance_matrix(matrix).map_err(|e| e.to_string())?;
    let n = parsed.matrix.n();
    let opts = Options { budget: WEB_BUDGET, jobs: 1 };
    let r = minimize_with(&parsed.matrix, n, k, opts).map_err(|e| e.to_string())?;
    let mut v = optimization_value(&r);
    v["labels"] = json!(parsed.labels);
    Ok(v)
}

#[wasm_bindgen]
pub fn describe(literal: &str) -> String {
    respond(describe_json(literal))
}

#[wasm_bindgen]
pub fn twist(literal: &str, index: usize) -> String {
    respond(twist_json(literal, index))
}

#[wasm_bindgen]
pub fn minimize(matrix: &str, k: usize) -> String {
    respond(minimize_text(matrix, k))
}
