//! The JSON schema for `--json` output and a validator for it.

use jsonschema::JSONSchema;
use serde_json::Value;

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Checks `report` against [`SCHEMA`], returning every violation.
pub fn validate(report: &Value) -> Result<(), Vec<String>> {
    let schema: Value = serde_json::from_str(SCHEMA).expect("bundled schema is valid JSON");
    let compiled = JSONSchema::compile(&schema).expect("bundled schema compiles");
    let result = compiled.validate(report);
    result.map_err(|errors| {
        errors
            .map(|e| format!("{}: {e}", e.instance_path))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn accepts_and_rejects() {
        let ok = json!({ "command": "hf", "input": "x", "seed": 1,
                         "result": { "hilbert_function": [1, 3, 3, 1], "text": "(1,3,3,1)" } });
        assert_eq!(validate(&ok), Ok(()));
        let bad = json!({ "command": "hf", "input": "x", "seed": 1, "result": { "text": "1331" } });
        assert!(validate(&bad).is_err());
        let bad = json!({ "command": "verify-paper", "seed": 1, "status": "MAYBE", "cases": [] });
        assert!(validate(&bad).is_err());
    }
}
