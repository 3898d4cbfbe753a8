//! End-to-end checks of the command-line surface: exit codes, byte-identical
//! reports, CSV layout, config loading, and the Hasse export.

use std::process::Command;

fn growthlab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_growthlab"))
        .args(args)
        .env_remove("GROWTHLAB_MAX_ORACLE_N")
        .output()
        .expect("binary runs")
}

#[test]
fn constants_report_is_byte_identical_and_valid() {
    let a = growthlab(&["constants", "--precision", "30"]);
    let b = growthlab(&["constants", "--precision", "30"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports differ between runs");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid JSON");
    assert_eq!(v["schema"], "growthlab-report/1");
    assert_eq!(v["pass"], true);
    let consts = v["results"]["constants"].as_array().unwrap();
    assert_eq!(consts.len(), 6);
    assert_eq!(consts[3]["enclosure"]["decimal"], "2.355257");
    // elapsed time lives on stderr, never in the report
    assert!(String::from_utf8_lossy(&a.stderr).contains("elapsed_ms="));
    assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed"));
}

#[test]
fn constants_precision_narrows_monotonically() {
    let parse_width = |out: &[u8]| -> (String, String) {
        let v: serde_json::Value = serde_json::from_slice(out).unwrap();
        let e = &v["results"]["constants"][3]["enclosure"];
        (
            e["width_le"].as_str().unwrap().to_string(),
            e["decimal"].as_str().unwrap().to_string(),
        )
    };
    let w40 = parse_width(&growthlab(&["constants", "--precision", "40"]).stdout);
    let w60 = parse_width(&growthlab(&["constants", "--precision", "60"]).stdout);
    assert!(
        w60.0 <= w40.0,
        "60-bit width {} not below 40-bit {}",
        w60.0,
        w40.0
    );
    assert_eq!(w40.1, w60.1, "decimals disagree across precisions");
}

#[test]
fn growth_subcommand_and_exit_codes() {
    let ok = growthlab(&["growth", "1;1"]);
    assert!(ok.status.success());
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["results"]["growth_rate"]["decimal"], "2.000000");
    assert_eq!(v["results"]["polynomial"], "1,-2");

    let sqrt = growthlab(&["growth", ";4,9"]);
    let v: serde_json::Value = serde_json::from_slice(&sqrt.stdout).unwrap();
    assert_eq!(v["results"]["growth_rate"]["decimal"], "5.741657");

    // non-positive sequence → input error, exit code 2
    let bad = growthlab(&["growth", "1,1,2;0"]);
    assert_eq!(bad.status.code(), Some(2));
    // garbage → exit code 2
    let garbage = growthlab(&["growth", "wat"]);
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn family_subcommand_with_config_and_hasse() {
    let dir = std::env::temp_dir().join("growthlab_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("example.json");
    std::fs::write(
        &config,
        r#"{
            "name": "example-from-config",
            "r": 5, "s": 3, "k": 5,
            "collections": [
                {"u": ["9 1 2 3 4 5 6 7 11 8 10"], "l": ["8 1 2 3 4 5 6 7"]}
            ]
        }"#,
    )
    .unwrap();
    let out_path = dir.join("report.json");
    let run = growthlab(&[
        "family",
        config.to_str().unwrap(),
        "--hasse",
        "--precision",
        "36",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["results"]["gr_lo"]["decimal"], "2.360281");
    assert_eq!(v["results"]["gr_hi"]["decimal"], "2.364197");
    assert_eq!(v["results"]["h"]["profiles"], 7);
    let dot_file = out_path.with_extension("h0.dot");
    let dot = std::fs::read_to_string(&dot_file).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 7);

    // unknown family name → exit 2
    let unknown = growthlab(&["family", "Z"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn family_csv_mirrors_summary_layout() {
    let run = growthlab(&[
        "family",
        "theorem1:5",
        "--format",
        "csv",
        "--precision",
        "36",
    ]);
    assert!(run.status.success());
    let text = String::from_utf8(run.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,smallest,largest,gr_lo,gr_hi"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("theorem1:5,\"1,1,2,3,5,7;9\",\"1,1,2,3,5,7,9,10,11;12\""));
    assert!(row.contains("2.359304"));
    assert!(row.contains("2.362008"));
}

#[test]
fn verify_theorem1_over_cli() {
    let run = growthlab(&["verify", "theorem1", "--format", "csv", "--precision", "34"]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let text = String::from_utf8(run.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,gr_lo,gr_hi,gamma_max,nonempty"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows[0].starts_with("5,2.359304,2.362008,2.470979,true"));
    assert!(rows[8].starts_with("21,"));

    let bad = growthlab(&["verify", "nonsense"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn proptest_subcommand_is_seeded() {
    let a = growthlab(&["proptest", "--seed", "11", "--cases", "10"]);
    let b = growthlab(&["proptest", "--seed", "11", "--cases", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["results"]["passed"], v["results"]["total"]);
}
