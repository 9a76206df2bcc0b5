use std::collections::BTreeSet;

use serde_json::Value;
use slater_hf::report::{run, RunOptions};

const SCHEMA: &str = include_str!("../../../docs/run-report.schema.json");

fn keys(v: &Value) -> BTreeSet<String> {
    v.as_object().unwrap().keys().cloned().collect()
}

fn required(schema: &Value) -> BTreeSet<String> {
    schema["required"].as_array().unwrap().iter().map(|k| k.as_str().unwrap().to_string()).collect()
}

fn properties(schema: &Value) -> BTreeSet<String> {
    keys(&schema["properties"])
}

#[test]
fn json_output_matches_documented_keys() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let report = run(&[2, 6], &RunOptions::default()).unwrap();
    let doc: Value = serde_json::from_str(&report.to_json()).unwrap();

    assert_eq!(keys(&doc), required(&schema));
    assert_eq!(keys(&doc["metadata"]), required(&schema["properties"]["metadata"]));
    assert_eq!(required(&schema["properties"]["metadata"]), properties(&schema["properties"]["metadata"]));

    let row_schema = &schema["$defs"]["row"];
    let ref_schema = &schema["$defs"]["reference"];
    assert_eq!(required(row_schema), properties(row_schema));
    assert_eq!(required(ref_schema), properties(ref_schema));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(keys(row), required(row_schema));
        assert_eq!(keys(&row["reference"]), required(ref_schema));
    }
    assert!(rows[0]["gamma"].is_null());
    assert!(rows[0]["wall_time_s"].is_null());
    assert_eq!(doc["metadata"]["p_shell"], "exact");
}
