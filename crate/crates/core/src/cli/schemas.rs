//! Versioned JSON schemas for every document the command line reads or writes.

use serde_json::{Map, Value};

pub const SCHEMA_NAMES: [&str; 10] = [
    "decomposition",
    "error",
    "euler",
    "gr",
    "gr-limit",
    "module",
    "ring-element",
    "stratum-poset",
    "variety-model",
    "weyl",
];

/// Schema text by name.
pub fn schema(name: &str) -> Option<&'static str> {
    Some(match name {
        "decomposition" => include_str!("../../schemas/v1/decomposition.json"),
        "error" => include_str!("../../schemas/v1/error.json"),
        "euler" => include_str!("../../schemas/v1/euler.json"),
        "gr" => include_str!("../../schemas/v1/gr.json"),
        "gr-limit" => include_str!("../../schemas/v1/gr-limit.json"),
        "module" => include_str!("../../schemas/v1/module.json"),
        "ring-element" => include_str!("../../schemas/v1/ring-element.json"),
        "stratum-poset" => include_str!("../../schemas/v1/stratum-poset.json"),
        "variety-model" => include_str!("../../schemas/v1/variety-model.json"),
        "weyl" => include_str!("../../schemas/v1/weyl.json"),
        _ => return None,
    })
}

/// One schema, or for `all` an object mapping every name to its schema.
pub(crate) fn render(name: &str) -> Option<String> {
    if name != "all" {
        return schema(name).map(str::to_string);
    }
    let mut all = Map::new();
    for n in SCHEMA_NAMES {
        let v: Value = serde_json::from_str(schema(n)?).expect("shipped schemas are JSON");
        all.insert(n.to_string(), v);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(all)).expect("serializable");
    s.push('\n');
    Some(s)
}
