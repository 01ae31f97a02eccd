use serde_json::Value;

use staircase_demo::{construct_text, longest_json, random_text, square_witness_json};

#[test]
fn construct_and_measure() {
    let text = construct_text("P", 6, 8).unwrap();
    assert_eq!(text.lines().next(), Some("00011111"));
    let v: Value = serde_json::from_str(&longest_json(&text, -1).unwrap()).unwrap();
    assert_eq!(v["profile"]["sigma"], 10);
    assert_eq!(v["staircase"]["cells"].as_array().unwrap().len(), 7);
}

#[test]
fn turn_limit_applies() {
    let text = construct_text("Q", 6, 19).unwrap();
    let v: Value = serde_json::from_str(&longest_json(&text, 0).unwrap()).unwrap();
    assert_eq!(v["staircase"]["turns"], 0);
    let unlimited: Value = serde_json::from_str(&longest_json(&text, -1).unwrap()).unwrap();
    assert_eq!(unlimited["profile"]["st"], 11);
}

#[test]
fn square_witness_reports_bound() {
    let text = random_text(12, 12, 7).unwrap();
    let v: Value = serde_json::from_str(&square_witness_json(&text).unwrap()).unwrap();
    let len = v["staircase"]["cells"].as_array().unwrap().len();
    assert!(len as u64 >= v["bound"].as_u64().unwrap());
    assert!(v["case"].is_string());
    assert!(!v["candidates"].as_array().unwrap().is_empty() || v["case"] != "long-corners");
}

#[test]
fn errors_are_messages() {
    assert!(construct_text("R", 2, 4).unwrap_err().contains("floor(5n/2)"));
    assert!(construct_text("X", 2, 4).is_err());
    assert!(longest_json("012", -1).is_err());
    assert!(square_witness_json("01\n11\n01").unwrap_err().contains("square"));
    assert!(random_text(500, 500, 1).is_err());
}
