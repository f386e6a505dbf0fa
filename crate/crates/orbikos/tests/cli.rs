//! End-to-end checks of the command-line driver: exit codes, report
//! content, and byte-level determinism.

use std::process::Command;

fn orbikos(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_orbikos"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
    )
}

#[test]
fn verify_four_punctured_sphere() {
    let (code, stdout, _) = orbikos(&[
        "verify", "--group", "Z2", "--ga", "1", "--gb", "1", "--cutoff", "12",
    ]);
    assert_eq!(code, 0, "stdout: {}", stdout);
    assert!(stdout.contains("genus: 0, punctures: 4"));
    assert!(stdout.contains("verdict: pass"));
}

#[test]
fn mf_prints_product_table() {
    let (code, stdout, _) = orbikos(&[
        "mf", "--group", "Z2", "--ga", "1", "--gb", "1", "--cutoff", "8",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("txy . txy = ((1/4)*z^2)*1"));
    assert!(stdout.contains("txyz . txyz = 0"));
    assert!(stdout.contains("matches expected table: true"));
}

#[test]
fn cover_info_two_factor_group() {
    let (code, stdout, _) = orbikos(&["cover-info", "--group", "Z3xZ3", "--ga", "1,0", "--gb", "0,1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("genus: 1, punctures: 9"));
}

#[test]
fn config_errors_exit_two() {
    let (code, _, stderr) = orbikos(&["cover-info", "--group", "Zebra", "--ga", "1", "--gb", "1"]);
    assert_eq!(code, 2, "stderr: {}", stderr);
    // Disconnected cover.
    let (code, _, _) = orbikos(&["cover-info", "--group", "Z4", "--ga", "2", "--gb", "0"]);
    assert_eq!(code, 2);
    // Cutoff too small.
    let (code, _, _) = orbikos(&[
        "cover-info", "--group", "Z2", "--ga", "1", "--gb", "1", "--cutoff", "1",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn json_report_schema() {
    let (code, stdout, _) = orbikos(&[
        "sectors", "--group", "Z3", "--ga", "1", "--gb", "1", "--cutoff", "6", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["cover"]["group"], "Z3");
    let sectors = v["sectors"].as_array().unwrap();
    assert_eq!(sectors.len(), 3);
    for s in sectors {
        assert!(s["chi"].is_string());
        assert!(s["sc_hilbert"].is_array());
        assert!(s["cf_hilbert"].is_array());
        assert!(s["kos_hilbert"].is_array());
    }
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "ks", "--group", "Z2", "--ga", "1", "--gb", "1", "--cutoff", "8", "--format", "json",
    ];
    let (c1, out1, _) = orbikos(&args);
    let (c2, out2, _) = orbikos(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn dump_curves_round_trips() {
    let (code, stdout, _) = orbikos(&[
        "dump-curves", "--group", "Z2", "--ga", "1", "--gb", "1", "--winding", "2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("gen e_L 0 0 [0]"));
    assert!(stdout.contains("gen f1 1 3 [0]"));
    // Every non-empty line is a gen or curve record with a bracketed label.
    for line in stdout.lines().filter(|l| !l.trim().is_empty()) {
        assert!(
            line.starts_with("gen ") || line.starts_with("curve "),
            "unexpected line: {}",
            line
        );
        assert!(line.trim_end().ends_with(']'));
    }
}

#[test]
fn substituted_convention_gives_same_dimensions() {
    let a = orbikos(&[
        "sectors", "--group", "Z2", "--ga", "1", "--gb", "1", "--cutoff", "10", "--format", "json",
    ]);
    let b = orbikos(&[
        "sectors", "--group", "Z2", "--ga", "1", "--gb", "1", "--cutoff", "10", "--format", "json",
        "--convention", "substituted",
    ]);
    assert_eq!(a.0, 0);
    assert_eq!(b.0, 0);
    let va: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&b.1).unwrap();
    for (sa, sb) in va["sectors"]
        .as_array()
        .unwrap()
        .iter()
        .zip(vb["sectors"].as_array().unwrap())
    {
        assert_eq!(sa["cf_hilbert"], sb["cf_hilbert"]);
    }
}
