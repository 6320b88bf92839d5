use lingcx_wasm::{analyze_json, control_json, highlight_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn analyze_reports_every_feature() {
    let v = parse(&analyze_json("The dog barked loudly.", "").unwrap());
    assert_eq!(v["words"], 4);
    assert_eq!(v["features"].as_object().unwrap().len(), 107);
    assert!(v["features"]["MLS"].is_null());
    let v = parse(
        &analyze_json(
            "The dog barked.",
            "(ROOT (S (NP (DT The) (NN dog)) (VP (VBD barked)) (. .)))",
        )
        .unwrap(),
    );
    assert_eq!(v["features"]["MLS"], 3.0);
    assert!(analyze_json("x", "(S (NN").is_err());
}

#[test]
fn control_prefixes_complex_side() {
    let v = parse(&control_json("The municipality ratified it.", "The city approved it.", "NbChars").unwrap());
    let tokens = v["tokens"].as_array().unwrap();
    assert_eq!(tokens.len(), 1);
    let t = tokens[0].as_str().unwrap();
    assert!(t.starts_with("<NbChars_"));
    assert_eq!(v["annotated"], format!("{t} The municipality ratified it."));
    assert!(control_json("a", "b", "Nope").is_err());
    let all = parse(&control_json("a b", "a", "").unwrap());
    assert_eq!(all["ratios"].as_object().unwrap().len(), 13);
}

#[test]
fn highlight_marks_deleted_words() {
    let v = parse(&highlight_json("the very old cat sat", "the cat sat", "the cat sat").unwrap());
    assert_eq!(v["rendered"], "the **very** **old** cat sat");
    assert_eq!(v["highlight_ter"], 0.0);
    assert_eq!(v["sari"], 100.0);
}
