//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain strings and returns a JSON string, or throws a
//! string error.

use std::sync::OnceLock;

use lingcx::control::{annotate_pair, pair_ratios, ControlFeature};
use lingcx::corpus::SentencePair;
use lingcx::explain::{gold_highlight, highlight_ter, render_highlight};
use lingcx::features::full_vector;
use lingcx::metrics::sari;
use lingcx::resources::Resources;
use lingcx::textproc::tokenize;
use lingcx::treequery::parse_bracketed;
use serde_json::{json, Map, Value};
use wasm_bindgen::prelude::*;

fn resources() -> &'static Resources {
    static RES: OnceLock<Resources> = OnceLock::new();
    RES.get_or_init(Resources::builtin)
}

fn number(x: Option<f64>) -> Value {
    x.and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// All features of one sentence. `tree` may be empty.
pub fn analyze_json(text: &str, tree: &str) -> Result<String, String> {
    let tree = match tree.trim() {
        "" => None,
        t => Some(parse_bracketed(t).map_err(|e| e.to_string())?),
    };
    let fv = full_vector(text, tree.as_ref(), resources());
    let mut out = Map::new();
    out.insert("words".into(), json!(tokenize(text).n_words()));
    out.insert("present".into(), json!(fv.present_count()));
    let values: Map<String, Value> = fv.iter().map(|(id, v)| (id.name().to_string(), number(v))).collect();
    out.insert("features".into(), Value::Object(values));
    Ok(Value::Object(out).to_string())
}

/// Control tokens and raw ratios for a complex/simple pair.
pub fn control_json(complex: &str, simple: &str, features: &str) -> Result<String, String> {
    let features: Vec<ControlFeature> = if features.trim().is_empty() {
        ControlFeature::ALL.to_vec()
    } else {
        features
            .split(',')
            .map(|f| f.trim().parse().map_err(|e: lingcx::Error| e.to_string()))
            .collect::<Result<_, _>>()?
    };
    let pair = SentencePair::new(0, complex, simple);
    let annotated = annotate_pair(&pair, &features, resources()).map_err(|e| e.to_string())?;
    let ratios: Map<String, Value> = features
        .iter()
        .zip(pair_ratios(&pair, &features, resources()))
        .map(|(f, r)| (f.name().to_string(), number(r)))
        .collect();
    let tokens: Vec<String> = annotated.tokens.iter().map(ToString::to_string).collect();
    Ok(json!({ "annotated": annotated.text, "tokens": tokens, "ratios": ratios }).to_string())
}

/// Gold deletion highlight of `complex` against `simple`, with SARI of `prediction`.
pub fn highlight_json(complex: &str, simple: &str, prediction: &str) -> Result<String, String> {
    let pair = SentencePair::new(0, complex, simple);
    let mask = gold_highlight(&pair);
    let rendered = render_highlight(complex, &mask).map_err(|e| e.to_string())?;
    let ter = highlight_ter(complex, &mask, simple).map_err(|e| e.to_string())?;
    let s = sari(complex, prediction, &[simple]).map_err(|e| e.to_string())?;
    Ok(json!({
        "rendered": rendered,
        "mask": mask.0,
        "highlight_ter": ter,
        "sari": s.sari,
        "add": 100.0 * s.f_add,
        "keep": 100.0 * s.f_keep,
        "delete": 100.0 * s.f_del,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn analyze(text: &str, tree: &str) -> Result<String, JsValue> {
    analyze_json(text, tree).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn control(complex: &str, simple: &str, features: &str) -> Result<String, JsValue> {
    control_json(complex, simple, features).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn highlight(complex: &str, simple: &str, prediction: &str) -> Result<String, JsValue> {
    highlight_json(complex, simple, prediction).map_err(JsValue::from)
}
