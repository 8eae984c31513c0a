use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn capring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capring"))
        .args(args)
        .env("CAPRING_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = capring(&full);
    let code = out.status.code().expect("exit code");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    assert_eq!(v["schema"], "capring/1");
    (code, v)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("capring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn close(v: &Value, x: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - x).abs() <= tol
}

#[test]
fn rates_table() {
    let (code, v) = json(&["rates", "--N", "2,3,4,9,inf", "--k", "3"]);
    assert_eq!(code, 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(close(&rows[0]["a"], 0.9449, 5e-4));
    assert!(close(&rows[2]["kappa"], 3.61, 5e-3));
    assert!(close(&rows[3]["kappa_over_N"], 0.872, 5e-4));
    assert!(close(&rows[4]["a"], 0.8414, 5e-4));
    assert!(rows[4]["kappa"].is_null());

    let csv = capring(&["rates", "--N", "2,inf", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("N,k,a_N(k)"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn verify_zero_heisenberg() {
    let (code, v) = json(&["verify-zero", "--group", "heisenberg:p=3,n=2", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["t"], serde_json::json!([7, 7, 7]));
    assert_eq!(v["result"]["tuples_checked"], 8000);
    assert_eq!(v["result"]["verified"], true);
    assert_eq!(v["inputs"]["group"], "heisenberg:p=3,n=2");
}

#[test]
fn oversized_share_breaks_zero_product() {
    // shares summing to more than one keep too much
    let out = capring(&[
        "verify-zero",
        "--group",
        "abelian:3",
        "--k",
        "3",
        "--eta",
        "1/3,1/3,1/2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_search_in_c3_squared() {
    let (code, v) = json(&[
        "search",
        "--group",
        "abelian:3,3",
        "--eq",
        "1,1,-2",
        "--exact",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["size"], 4);
    assert_eq!(v["result"]["bound"], 6);
    assert_eq!(v["result"]["certified"], true);
}

#[test]
fn set_check_reports_violation() {
    let bad = scratch("bad.json", "[[0],[1],[2]]");
    let (code, v) = json(&[
        "search",
        "--group",
        "abelian:5",
        "--set",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["free"], false);
    assert!(v["result"]["violation"].is_array());

    let good = scratch("good.json", "[[0],[1]]");
    let (code, _) = json(&[
        "search",
        "--group",
        "abelian:5",
        "--set",
        good.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn bound_reports_both_abelian_quantities() {
    let (code, v) = json(&["bound", "--group", "abelian:3,3", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["two_t"], "6");
    assert!(close(&v["result"]["kappa_product"], 7.59, 5e-3));
    let (code, v) = json(&["bound", "--group", "abelian:3,3", "--eq", "1,1,-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["equation"]["bound"], 6);
    assert!(v["result"]["covering_bound"].as_u64().unwrap() >= 6);
}

#[test]
fn tricolor_modes() {
    let (code, v) = json(&["tricolor", "--group", "abelian:3", "--k", "3", "--search"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["size"], 2);

    let fam = scratch("fam.json", "[[[0],[0],[0]],[[1],[1],[1]]]");
    let (code, v) = json(&[
        "tricolor",
        "--group",
        "abelian:3",
        "--k",
        "3",
        "--check",
        fam.to_str().unwrap(),
    ]);
    assert_eq!((code, v["result"]["valid"].as_bool()), (0, Some(true)));

    let bad = scratch("badfam.json", "[[[0],[1],[2]],[[1],[1],[1]]]");
    let (code, v) = json(&[
        "tricolor",
        "--group",
        "abelian:3",
        "--k",
        "3",
        "--check",
        bad.to_str().unwrap(),
    ]);
    assert_eq!((code, v["result"]["valid"].as_bool()), (1, Some(false)));

    let (code, v) = json(&["tricolor", "--group", "abelian:3,3", "--k", "3", "--bound"]);
    assert_eq!((code, v["result"]["bound"].as_u64()), (0, Some(9)));
}

#[test]
fn cover_from_file() {
    let sets = scratch(
        "sets.json",
        "[[[0,0],[1,0],[0,1],[1,1]],[[0,0],[2,0],[0,2],[2,1],[1,2]]]",
    );
    let (code, v) = json(&[
        "cover",
        "--group",
        "abelian:3,3",
        "--k",
        "2",
        "--sets",
        sets.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verified"], true);
    let ledger = v["result"]["ledger"].as_object().unwrap();
    assert!(ledger
        .values()
        .all(|r| r == "C" || r.as_str().unwrap().starts_with('B')));
    assert_eq!(v["inputs"]["ordering"], "as listed");
}

#[test]
fn cauchy_davenport_and_rewriting() {
    let (code, v) = json(&[
        "cauchy-davenport",
        "--p",
        "5",
        "--a",
        "0,1",
        "--b",
        "0,2",
        "--c",
        "1,3,4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["product"], serde_json::json!([1, 1, 1, 1, 1]));

    let (code, v) = json(&[
        "reduce-word",
        "--group",
        "heisenberg:p=3,n=2",
        "--word",
        "x1 y1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["matches_dense_product"], true);
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 5);

    let (code, v) = json(&[
        "reduce-word",
        "--group",
        "heisenberg:p=3,n=2",
        "--word",
        "z z z",
    ]);
    assert_eq!(code, 0);
    assert!(v["result"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["rates", "--bogus"],
        vec!["verify-zero", "--group", "dihedral:4"],
        vec!["search", "--group", "abelian:3", "--eq", "1,1"],
        vec![
            "search",
            "--group",
            "abelian:3,3,3,3,3",
            "--eq",
            "1,1,1,-3",
            "--exact",
        ],
        vec![
            "cauchy-davenport",
            "--p",
            "5",
            "--a",
            "0",
            "--b",
            "0",
            "--c",
            "0",
        ],
    ] {
        assert_eq!(capring(&args).status.code(), Some(2), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_capring"))
        .args(["rates"])
        .env("CAPRING_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = capring(&[
        "search",
        "--group",
        "heisenberg:p=3,n=2",
        "--format",
        "json",
        "--workers",
        "8",
    ])
    .stdout;
    let b = capring(&[
        "search",
        "--group",
        "heisenberg:p=3,n=2",
        "--format",
        "json",
        "--workers",
        "1",
    ])
    .stdout;
    assert_eq!(a, b);
}

#[test]
fn selftest_single_criterion() {
    let out = capring(&["selftest", "--criterion", "6", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("criterion,title,status"));
    assert_eq!(
        out.status.code(),
        Some(if text.contains(",PASS,") { 0 } else { 1 })
    );
}
