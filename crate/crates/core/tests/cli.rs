use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qboson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qboson"))
        .args(args)
        .env_remove("QBOSON_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn evolve_writes_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = qboson(&["evolve", "--g", "1", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "l,time,rho_P,rho_N,rho_b");
    assert_eq!(rows.len(), 302);
    assert!(rows[1].starts_with("0,0,1,-1,0"), "{}", rows[1]);
    assert!(rows[301].starts_with("300,30,"), "{}", rows[301]);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(json["records"].as_array().unwrap().len(), 301);
}

#[test]
fn csv_header_reads_back_as_config() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let o = qboson(&[
        "evolve",
        "--g",
        "34.75",
        "--n-t",
        "20",
        "--initial",
        "bosons(3)",
        "-o",
        first.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let header: String = fs::read_to_string(&first)
        .unwrap()
        .lines()
        .filter_map(|l| l.strip_prefix("# "))
        .map(|l| format!("{l}\n"))
        .collect();
    let config = dir.path().join("run.toml");
    fs::write(&config, header).unwrap();
    let second = dir.path().join("b.csv");
    let o = qboson(&[
        "evolve",
        "--config",
        config.to_str().unwrap(),
        "-o",
        second.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn config_missing_a_physical_key_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    fs::write(&config, "g = 1.0\nkappa = 0.5\nomega0 = 1.0\nt = 2\nn_x = 1\n").unwrap();
    let o = qboson(&["evolve", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("omega"), "{}", stderr(&o));
}

#[test]
fn invalid_values_exit_with_validation_code() {
    for args in [
        &["evolve", "--kappa", "-1"][..],
        &["evolve", "--initial", "bosons(4)"],
        &["evolve", "--delta-t", "nan"],
        &["fidelity", "--total", "1.5"],
        &["compile", "--ordering", "zigzag"],
    ] {
        let o = qboson(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error: "), "{}", stderr(&o));
    }
}

#[test]
fn unwritable_output_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("out.csv");
    let o = qboson(&["evolve", "--n-t", "2", "-o", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn sample_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = qboson(&[
            "sample",
            "--g",
            "34.75",
            "--n-t",
            "40",
            "--samples",
            "10",
            "--seed",
            "7",
            "-o",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        (fs::read(&path).unwrap(), fs::read(path.with_extension("json")).unwrap())
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qboson"))
        .args(["evolve", "--n-t", "3"])
        .env("QBOSON_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("trajectory.csv").exists());
    assert!(dir.path().join("trajectory.json").exists());
}

#[test]
fn json_to_stdout() {
    let o = qboson(&["evolve", "--n-t", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 3);
}

#[test]
fn encode_and_fidelity_output() {
    let o = qboson(&["encode", "--t", "2", "--operator", "number"]);
    assert!(o.status.success());
    let terms: Vec<(f64, String)> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].parse().unwrap(), f[2].to_string())
        })
        .collect();
    let want = [(1.5, "II"), (-0.5, "IZ"), (-1.0, "ZI")];
    assert_eq!(terms.len(), want.len());
    for ((c, p), (wc, wp)) in terms.iter().zip(want) {
        assert_eq!(p, wp);
        assert!((c - wc).abs() < 1e-12);
    }

    let o = qboson(&["fidelity"]);
    assert_eq!(stdout(&o).trim(), "0.999695");
    let o = qboson(&["fidelity", "--steps", "1"]);
    assert_eq!(stdout(&o).trim(), "0.996956");
}

#[test]
fn compile_prints_text_and_counts() {
    let o = qboson(&["compile", "--ordering", "ladder"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("OPENQASM 2.0;"));
    assert!(text.contains("cnot_cancelled="), "{text}");
}

#[test]
fn verify_passes_and_skips_oversized_widths() {
    let o = qboson(&["verify", "--dense-t", "1,2,20", "--backend-steps", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("SKIP") && text.contains("recurrence t=20"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_reports_corrupted_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    for entry in fs::read_dir(&src).unwrap() {
        let p = entry.unwrap().path();
        fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let target = dir.path().join("number_t3.golden");
    let text = fs::read_to_string(&target)
        .unwrap()
        .replacen("-2 ; 0 ; IZI", "-2.1 ; 0 ; IZI", 1);
    fs::write(&target, text).unwrap();
    let o = qboson(&[
        "verify",
        "--golden-dir",
        dir.path().to_str().unwrap(),
        "--dense-t",
        "2",
        "--backend-steps",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1, "{text}");
    assert!(failing[0].contains("number_t3.golden"));
}
