use qboson_web::{band_json, compile_json, trajectory_json};
use serde_json::Value;

#[test]
fn trajectory_has_one_point_per_step() {
    let v: Value =
        serde_json::from_str(&trajectory_json(1.0, "fermion_pair", 20, 0.1, "statevector").unwrap()).unwrap();
    assert_eq!(v["time"].as_array().unwrap().len(), 21);
    assert_eq!(v["rho_p"][0], 1.0);
    assert_eq!(v["rho_n"][0], -1.0);
}

#[test]
fn backends_give_the_same_series() {
    let a: Value = serde_json::from_str(&trajectory_json(34.75, "bosons(3)", 30, 0.1, "statevector").unwrap()).unwrap();
    let b: Value = serde_json::from_str(&trajectory_json(34.75, "bosons(3)", 30, 0.1, "mps").unwrap()).unwrap();
    for (x, y) in a["rho_b"]
        .as_array()
        .unwrap()
        .iter()
        .zip(b["rho_b"].as_array().unwrap())
    {
        assert!((x.as_f64().unwrap() - y.as_f64().unwrap()).abs() < 1e-8);
    }
}

#[test]
fn band_is_deterministic() {
    let a = band_json(34.75, "fermion_pair", 20, 5, 3).unwrap();
    assert_eq!(a, band_json(34.75, "fermion_pair", 20, 5, 3).unwrap());
    let v: Value = serde_json::from_str(&a).unwrap();
    assert!(v["mean_std"].as_f64().unwrap() > 0.0);
}

#[test]
fn compile_reports_counts_and_text() {
    let v: Value = serde_json::from_str(&compile_json(1.0, 0.0, 0.1, "lex").unwrap()).unwrap();
    assert!(v["cnot_cancelled"].as_u64().unwrap() <= v["cnot_naive"].as_u64().unwrap());
    assert!(v["text"].as_str().unwrap().starts_with("OPENQASM 2.0;"));
}

#[test]
fn bad_input_is_an_error_message() {
    assert!(trajectory_json(1.0, "bosons(9)", 5, 0.1, "statevector")
        .unwrap_err()
        .contains("occupation 9"));
    assert!(compile_json(1.0, 0.0, 0.1, "zigzag").unwrap_err().contains("ordering"));
    assert!(trajectory_json(1.0, "fermion_pair", 5, 0.1, "gpu").is_err());
}
