//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON document; the `*_json` functions hold the logic so they can be
//! tested natively.

use latlab_core::chains::{sqrt_descent, weak_regularity_report, DEFAULT_CHAIN_LIMIT};
use latlab_core::completions::fil_lattice;
use latlab_core::coverings::ClassMap;
use latlab_core::fixtures::gen_fixture;
use latlab_core::proof::ProofProblem;
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest lattice the page will analyze; chain enumeration is the bottleneck.
const MAX_DEMO_ELEMENTS: usize = 512;

#[derive(Serialize)]
struct ClassRow {
    id: usize,
    members: Vec<String>,
    weakly_regular: bool,
    mu: String,
    upsilon: usize,
    lambda: usize,
}

fn parse_params(params: &str) -> Result<Vec<u64>, String> {
    params
        .split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|_| format!("bad parameter {s:?}")))
        .collect()
}

pub fn analyze_fixture_json(kind: &str, params: &str) -> Result<String, String> {
    let l = gen_fixture(kind, &parse_params(params)?).map_err(|e| e.to_string())?;
    if l.len() > MAX_DEMO_ELEMENTS {
        return Err(format!("{} elements; the demo stops at {MAX_DEMO_ELEMENTS}", l.len()));
    }
    let classes = ClassMap::new(&l);
    let rows: Vec<ClassRow> = weak_regularity_report(&l, DEFAULT_CHAIN_LIMIT)
        .into_iter()
        .map(|r| ClassRow {
            id: r.class_id,
            members: classes.class(r.class_id).members.iter().map(|c| c.display(&l).to_string()).collect(),
            weakly_regular: r.is_weakly_regular,
            mu: r.mu_display(),
            upsilon: r.upsilon,
            lambda: r.lambda,
        })
        .collect();
    let fil = fil_lattice(&l).check_embedding();
    let out = json!({
        "elements": l.len(),
        "coverings": l.covers().len(),
        "modular": l.is_modular(),
        "distributive": l.is_distributive(),
        "classes": rows,
        "fil_isomorphic": fil.pass,
    });
    Ok(out.to_string())
}

/// The first `n` at which `Λ` reaches each value, for `n ≤ max_n`.
pub fn lambda_series_json(max_n: u64) -> Result<String, String> {
    if max_n > 1 << 40 {
        return Err("max_n above 2^40".into());
    }
    // Λ(n) ≥ k first happens at n = (m + 1)², where m is the first value at which Λ reaches k − 1.
    let mut breaks = vec![(0u64, 0u64)];
    let mut n = 1u64;
    while n <= max_n {
        breaks.push((n, sqrt_descent(n)));
        n = (n + 1) * (n + 1);
    }
    Ok(serde_json::to_string(&breaks).expect("pairs serialize"))
}

pub fn proof_steps_json(problem: &str) -> Result<String, String> {
    let p = ProofProblem::from_json(problem).map_err(|e| e.to_string())?;
    let out = p.solve().map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&out).expect("outcome serializes"))
}

#[wasm_bindgen]
pub fn analyze_fixture(kind: &str, params: &str) -> Result<String, JsValue> {
    analyze_fixture_json(kind, params).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lambda_series(max_n: f64) -> Result<String, JsValue> {
    if max_n.is_nan() || max_n < 0.0 {
        return Err(JsValue::from_str("max_n must be a nonnegative number"));
    }
    lambda_series_json(max_n as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn proof_steps(problem: &str) -> Result<String, JsValue> {
    proof_steps_json(problem).map_err(|e| JsValue::from_str(&e))
}
