//! wasm-bindgen surface for the browser demo in `www/`.
//!
//! Every export returns a JSON string; failures come back as `{"error": "..."}`
//! so the page never has to catch a JS exception.

use std::sync::Arc;

use fuzzysched::fuzzy::LinguisticVariable;
use fuzzysched::io::{parse_workload, render_gantt, round_half_up, GanttFormat, RenderOptions, WorkloadFormat};
use fuzzysched::{compare, compute_metrics, simulate, FuzzyEngine, PolicyKind, PrioritySource};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const CURVE_SAMPLES: usize = 200;

fn wrap(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn curves(var: &LinguisticVariable) -> Value {
    let (lo, hi) = var.universe();
    let terms: Vec<Value> = var
        .terms()
        .iter()
        .map(|t| json!({ "name": t.name, "points": t.function.breakpoints() }))
        .collect();
    json!({
        "name": var.name(),
        "universe": [lo, hi],
        "terms": terms,
    })
}

/// Term geometry of every variable of the default engine.
pub fn variables_json() -> String {
    let engine = FuzzyEngine::default();
    let vars: Vec<Value> = engine.inputs().iter().chain([engine.output()]).map(curves).collect();
    json!({ "variables": vars }).to_string()
}

/// Full trace of one inference: input degrees, rule strengths,
/// the aggregated output curve and its centroid.
pub fn infer_json(priority: f64, exec_time: f64) -> String {
    wrap((|| {
        let engine = FuzzyEngine::default();
        let inputs = [priority, exec_time];
        let degrees = engine.fuzzify_inputs(&inputs).map_err(|e| e.to_string())?;
        let mut fired = Vec::new();
        for rule in &engine.rulebase().rules {
            let s = engine.evaluate_rule(rule, &degrees).map_err(|e| e.to_string())?;
            if s > 0.0 {
                fired.push(json!({ "rule": rule.to_string(), "strength": s }));
            }
        }
        let agg = engine.infer_aggregate(&inputs).map_err(|e| e.to_string())?;
        let centroid = agg.centroid().map_err(|e| e.to_string())?;
        let degrees: Vec<Value> = engine
            .inputs()
            .iter()
            .zip(&degrees)
            .map(|(v, d)| {
                let names: Vec<&str> = v.terms().iter().map(|t| t.name.as_str()).collect();
                json!({ "variable": v.name(), "terms": names, "degrees": d })
            })
            .collect();
        Ok(json!({
            "new_priority": centroid,
            "rounded": round_half_up(centroid, 2),
            "degrees": degrees,
            "fired": fired,
            "output": agg.samples(CURVE_SAMPLES),
        }))
    })())
}

/// Simulates a CSV workload under one policy; returns an SVG chart and metrics.
pub fn schedule_json(csv: &str, policy: &str, replay: bool) -> String {
    wrap((|| {
        let doc = parse_workload(csv.as_bytes(), WorkloadFormat::Csv).map_err(|e| e.to_string())?;
        let kind: PolicyKind = policy.parse()?;
        let policy = kind.with_source(source(replay));
        let schedule = simulate(&doc.tasks, &policy).map_err(|e| e.to_string())?;
        let metrics = compute_metrics(&schedule).map_err(|e| e.to_string())?;
        let svg = String::from_utf8(render_gantt(&schedule, &RenderOptions::new(GanttFormat::Svg)))
            .map_err(|e| e.to_string())?;
        Ok(json!({
            "policy": policy.name(),
            "svg": svg,
            "segments": schedule.segments,
            "metrics": metrics,
        }))
    })())
}

/// Average waiting and turnaround of every policy on a CSV workload.
pub fn compare_json(csv: &str, replay: bool) -> String {
    wrap((|| {
        let doc = parse_workload(csv.as_bytes(), WorkloadFormat::Csv).map_err(|e| e.to_string())?;
        let policies: Vec<_> = PolicyKind::ALL.iter().map(|k| k.with_source(source(replay))).collect();
        let report = compare(doc.name.as_deref().unwrap_or("workload"), &doc.tasks, &policies);
        serde_json::to_value(&report).map_err(|e| e.to_string())
    })())
}

fn source(replay: bool) -> PrioritySource {
    if replay {
        PrioritySource::Recorded
    } else {
        PrioritySource::Engine(Arc::new(FuzzyEngine::default()))
    }
}

#[wasm_bindgen]
pub fn variables() -> String {
    variables_json()
}

#[wasm_bindgen]
pub fn infer(priority: f64, exec_time: f64) -> String {
    infer_json(priority, exec_time)
}

#[wasm_bindgen]
pub fn schedule(csv: &str, policy: &str, replay: bool) -> String {
    schedule_json(csv, policy, replay)
}

#[wasm_bindgen(js_name = comparePolicies)]
pub fn compare_policies(csv: &str, replay: bool) -> String {
    compare_json(csv, replay)
}
