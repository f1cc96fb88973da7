use serde_json::Value;
use zcaq_web::{catalog_json, iepr_json, search_json, surface_json, SEARCH_CAP};

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn catalog_lists_seeds() {
    let entries = parse(&catalog_json());
    let ex1 = entries.as_array().unwrap().iter().find(|e| e["name"] == "ex1_7_4").unwrap();
    assert_eq!(ex1["kind"], "zcp");
    assert_eq!(ex1["length"], 7);
    assert_eq!(ex1["zone"], 4);
}

#[test]
fn surface_of_small_quad() {
    let s = parse(&surface_json("3", "ex1_7_4").unwrap());
    assert_eq!(s["max_shifts"], serde_json::json!([6, 2]));
    assert_eq!(s["measured_zone"], serde_json::json!([4, 3]));
    let values: Vec<f64> = s["values"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(values.len(), 13 * 5);
    assert_eq!(values[6 * 5 + 2], 84.0);
    let off_peak: f64 =
        (3..10).flat_map(|r| (0..5).map(move |c| r * 5 + c)).filter(|&i| i != 32).map(|i| values[i]).sum();
    assert!(off_peak < 1e-9);
    assert!(surface_json("3", "nope").is_err());
    assert!(surface_json("ex1_7_4", "ex1_7_4").is_err());
}

#[test]
fn envelopes_stay_under_bound() {
    let e = parse(&iepr_json("26", "ex3_18_13", 5, 8).unwrap());
    assert_eq!(e["t"].as_array().unwrap().len(), 8 * 18 + 1);
    let curves = e["curves"].as_array().unwrap();
    assert_eq!(curves.len(), 4);
    assert_eq!(curves[1]["label"], "X2:5");
    let bound = e["bound"].as_f64().unwrap();
    assert!((bound - 34.0 / 9.0).abs() < 1e-9);
    for c in curves {
        let peak = c["iepr"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).fold(0.0, f64::max);
        assert!((peak - c["pmepr"].as_f64().unwrap()).abs() < 1e-9);
        assert!(peak <= e["max_pmepr"].as_f64().unwrap() + 1e-12);
    }
    assert!(iepr_json("26", "ex3_18_13", 26, 8).is_err());
    assert!(iepr_json("26", "ex3_18_13", 0, 2).is_err());
}

#[test]
fn search_results() {
    let found = parse(&search_json(7, 4, 0).unwrap());
    assert!(found.as_array().unwrap().iter().all(|p| p["zone"].as_u64().unwrap() >= 4));
    assert_eq!(parse(&search_json(7, 7, 0).unwrap()), serde_json::json!([]));
    assert_eq!(parse(&search_json(10, 2, 3).unwrap()).as_array().unwrap().len(), 3);
    assert!(search_json(SEARCH_CAP + 1, 2, 1).is_err());
}
