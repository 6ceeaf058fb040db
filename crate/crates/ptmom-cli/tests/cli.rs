//! End-to-end checks of the command-line surface: exit codes, output
//! formats, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn ptmom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptmom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("ptmom-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a single JSON document")
}

#[test]
fn generate_certify_bell_pipeline() {
    let path = tmp("pipeline-bell.json");
    let gen = ptmom(&[
        "generate",
        "--kind",
        "max-entangled",
        "--d",
        "2",
        "--seed",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));

    let cert = ptmom(&["certify", "-i", path.to_str().unwrap()]);
    assert_eq!(cert.status.code(), Some(0), "maximally entangled exits 0");
    let report = stdout_json(&cert);
    assert_eq!(report["verdict"], "maximally_entangled");
    assert!((report["lambda_min"].as_f64().unwrap() + 0.5).abs() < 1e-9);
    assert!((report["negativity"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(report["moments"].as_array().unwrap().len(), 4);
}

#[test]
fn certify_separable_exits_three() {
    let path = tmp("separable.json");
    let gen = ptmom(&[
        "generate",
        "--kind",
        "separable",
        "--d",
        "2",
        "--rank",
        "3",
        "--seed",
        "9",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let cert = ptmom(&["certify", "-i", path.to_str().unwrap()]);
    assert_eq!(cert.status.code(), Some(3));
    assert_eq!(stdout_json(&cert)["verdict"], "not_maximally_entangled");
}

#[test]
fn moments_of_maximally_mixed() {
    // hand-written maximally mixed state file
    let path = tmp("maximally-mixed.json");
    let quarter = "2.5000000000000000e-1";
    let zero = "0.0000000000000000e0";
    let re: Vec<Vec<String>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| if i == j { quarter.into() } else { zero.into() })
                .collect()
        })
        .collect();
    let im = vec![vec![zero.to_string(); 4]; 4];
    let doc = format!(
        r#"{{"dim_a":2,"dim_b":2,"re":[{}],"im":[{}]}}"#,
        re.iter()
            .map(|row| format!("[{}]", row.join(",")))
            .collect::<Vec<_>>()
            .join(","),
        im.iter()
            .map(|row| format!("[{}]", row.join(",")))
            .collect::<Vec<_>>()
            .join(","),
    );
    std::fs::write(&path, doc).unwrap();

    let out = ptmom(&["moments", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let values = stdout_json(&out);
    let expect = [1.0, 0.25, 0.0625, 0.015625];
    for (v, want) in values.as_array().unwrap().iter().zip(expect) {
        assert!((v.as_f64().unwrap() - want).abs() < 1e-13);
    }

    // --k truncates
    let out = ptmom(&["moments", "-i", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(stdout_json(&out).as_array().unwrap().len(), 2);
}

#[test]
fn reconstruct_bell_moments() {
    let out = ptmom(&["reconstruct", "--moments", "1,1,0.25,0.25"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let spectrum: Vec<f64> = doc["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let expect = [0.5, 0.5, 0.5, -0.5];
    for (got, want) in spectrum.iter().zip(expect) {
        assert!((got - want).abs() < 1e-7, "{got} vs {want}");
    }
    let e: Vec<f64> = doc["elementary_symmetric"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for (got, want) in e.iter().zip([1.0, 0.0, -0.25, -0.0625]) {
        assert!((got - want).abs() < 1e-12);
    }
    assert_eq!(
        doc["characteristic_polynomial"].as_array().unwrap().len(),
        5
    );
}

#[test]
fn reconstruct_rejects_bad_input() {
    // unparsable decimals
    assert_eq!(
        ptmom(&["reconstruct", "--moments", "1,abc"]).status.code(),
        Some(1)
    );
    // p_1 != 1
    assert_eq!(
        ptmom(&["reconstruct", "--moments", "0.9,0.5"])
            .status
            .code(),
        Some(1)
    );
    // moments no real spectrum can produce
    let out = ptmom(&["reconstruct", "--moments", "1,0.9,0.9,0.2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ptmom:"));
}

#[test]
fn check_rana_bell_and_violation() {
    let path = tmp("rana-bell.json");
    ptmom(&["generate", "--kind", "bell", "-o", path.to_str().unwrap()]);
    let out = ptmom(&["check-rana", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["in_interval"], true);
    assert_eq!(doc["negative_count"], 1);
    assert_eq!(doc["bound"], 1);
    assert_eq!(doc["satisfied"], true);
}

#[test]
fn malformed_and_invalid_files_exit_two() {
    let path = tmp("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(
        ptmom(&["moments", "-i", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    // valid JSON, invalid physics: trace 2
    let path = tmp("trace2.json");
    std::fs::write(
        &path,
        r#"{"dim_a":1,"dim_b":2,"re":[[1.0,0.0],[0.0,1.0]],"im":[[0.0,0.0],[0.0,0.0]]}"#,
    )
    .unwrap();
    assert_eq!(
        ptmom(&["certify", "-i", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    // missing file
    assert_eq!(
        ptmom(&["moments", "-i", "/nonexistent/state.json"])
            .status
            .code(),
        Some(2)
    );

    // wrong partition for certify
    let path = tmp("qutrit.json");
    ptmom(&[
        "generate",
        "--kind",
        "max-entangled",
        "--d",
        "3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        ptmom(&["certify", "-i", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_one() {
    // unknown flag
    assert_eq!(ptmom(&["moments", "--frobulate"]).status.code(), Some(1));
    // unknown subcommand
    assert_eq!(ptmom(&["transmogrify"]).status.code(), Some(1));
    // unknown kind mentions the registry
    let out = ptmom(&["generate", "--kind", "thermal"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("haar-pure") && err.contains("separable"),
        "{err}"
    );
    // --d conflicts with --da/--db
    assert_eq!(
        ptmom(&["generate", "--kind", "bell", "--d", "2", "--da", "2", "--db", "2"])
            .status
            .code(),
        Some(1)
    );
    // bad rank
    assert_eq!(
        ptmom(&["generate", "--kind", "ginibre", "--d", "2", "--rank", "9"])
            .status
            .code(),
        Some(1)
    );
    // help is not an error
    assert_eq!(ptmom(&["--help"]).status.code(), Some(0));
}

#[test]
fn generate_is_deterministic_per_seed() {
    let a = ptmom(&[
        "generate", "--kind", "ginibre", "--da", "2", "--db", "3", "--seed", "11",
    ]);
    let b = ptmom(&[
        "generate", "--kind", "ginibre", "--da", "2", "--db", "3", "--seed", "11",
    ]);
    let c = ptmom(&[
        "generate", "--kind", "ginibre", "--da", "2", "--db", "3", "--seed", "12",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn state_files_round_trip_through_moments() {
    // generate -> moments -> reconstruct agrees with check-rana's spectrum
    let path = tmp("roundtrip.json");
    ptmom(&[
        "generate",
        "--kind",
        "ginibre",
        "--d",
        "2",
        "--rank",
        "2",
        "--seed",
        "21",
        "-o",
        path.to_str().unwrap(),
    ]);
    let p: Vec<f64> = stdout_json(&ptmom(&["moments", "-i", path.to_str().unwrap()]))
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let csv = p
        .iter()
        .map(|v| format!("{v:.17e}"))
        .collect::<Vec<_>>()
        .join(",");
    let rec = stdout_json(&ptmom(&["reconstruct", "--moments", &csv]));
    let rana = stdout_json(&ptmom(&["check-rana", "-i", path.to_str().unwrap()]));
    let rebuilt: Vec<f64> = rec["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let direct: Vec<f64> = rana["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for (a, b) in rebuilt.iter().zip(&direct) {
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }
}

#[test]
fn selftest_passes_and_reports_every_fixture() {
    let out = ptmom(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["failed"], 0);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.len() >= 14, "selftest covers the fixture corpus");
    for check in checks {
        assert_eq!(check["pass"], true, "{}", check["name"]);
    }
}
