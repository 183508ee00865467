//! The `cmh` binary: exit codes, output formats and error handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cmh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmh")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    cmh(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(cmh(args).stdout).unwrap()
}

#[test]
fn check_cm_exit_codes() {
    assert_eq!(code(&["check-cm", &fixture("cm_ok.json")]), 0);
    assert_eq!(code(&["check-cm", &fixture("cm_bad.json")]), 1);
    assert_eq!(code(&["check-cm", &fixture("cm_empty.json")]), 2);
    assert_eq!(code(&["check-cm", &fixture("qc_c0.2.json")]), 2);
    assert_eq!(code(&["check-cm", "/no/such/file.json"]), 2);
    assert_eq!(code(&["check-cm", &fixture("cm_ok.json"), "--tol", "0"]), 2);
    assert_eq!(code(&["check-cm", &fixture("cm_ok.json"), "--tol", "nan"]), 2);
}

#[test]
fn check_cm_reports_first_violation() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["check-cm", &fixture("cm_bad.json")])).unwrap();
    assert_eq!(v["result"]["verdict"], "violated");
    assert_eq!(
        (v["result"]["k"].as_u64(), v["result"]["n"].as_u64()),
        (Some(2), Some(0))
    );
    let csv = stdout(&["check-cm", &fixture("cm_bad.json"), "--format", "csv"]);
    assert!(csv.starts_with("key,value\n"));
    assert!(csv.contains("result.verdict,violated"));
}

#[test]
fn certify_exit_codes() {
    let small = ["--grid-n", "16", "--nr", "6"];
    let run = |path: &str, method: &str, k: &str| {
        let mut args = vec!["certify", path, "--method", method, "--k", k];
        args.extend(small);
        code(&args)
    };
    assert_eq!(run(&fixture("qc_c0.2.json"), "grid", "0.8"), 0);
    assert_eq!(run(&fixture("qc_c0.3.json"), "grid", "0.9"), 1);
    assert_eq!(run(&fixture("polylog_4_3.json"), "thm1.7", "0.7"), 0);
    assert_eq!(run(&fixture("polylog_4_3.json"), "polylog", "0.6"), 1);
    assert_eq!(run(&fixture("hypergeom_1_6_2_6.json"), "hyp", "0.7"), 0);
    assert_eq!(run(&fixture("beta_pair_finite.json"), "derivative-limit", "0.5"), 1);
    assert_eq!(run(&fixture("beta_pair.json"), "thm1.9", "0.9"), 1);
    // wrong spec kind for the method, invalid k, unknown method
    assert_eq!(run(&fixture("qc_c0.2.json"), "polylog", "0.7"), 2);
    assert_eq!(run(&fixture("qc_c0.2.json"), "grid", "1.5"), 2);
    assert_eq!(run(&fixture("qc_c0.2.json"), "magic", "0.5"), 2);
}

#[test]
fn polylog_certificate_document() {
    let text = stdout(&[
        "certify",
        &fixture("polylog_4_3.json"),
        "--method",
        "thm1.7",
        "--k",
        "0.7",
        "--grid-n",
        "16",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "certified");
    assert_eq!(v["branch"], "boundary-limit");
    assert!((v["constant"].as_f64().unwrap() - 0.684_216_388_8).abs() < 1e-9);
    // 17 significant digits
    assert!(text.contains("\"constant\":6.8421638881010"));
}

#[test]
fn verify_and_ratio_commands() {
    fn with<'a>(head: &[&'a str]) -> Vec<&'a str> {
        let small = ["--grid-n", "16", "--nr", "6", "--rect", "-2,0.9,0.05,2,20,20"];
        head.iter().copied().chain(small).collect()
    }
    assert_eq!(code(&with(&["verify-thm", "1.2", &fixture("mixture_map.json")])), 0);
    assert_eq!(
        code(&with(&["verify-thm", "modulus", &fixture("qc_c0.2.json"), "--a", "0"])),
        0
    );
    assert_eq!(code(&with(&["verify-thm", "1.3", &fixture("same_parts.json")])), 0);
    assert_eq!(code(&with(&["verify-thm", "1.4", &fixture("same_parts.json")])), 2);
    assert_eq!(
        code(&with(&["verify-thm", "1.2", &fixture("same_parts.json"), "--a", "-1"])),
        2
    );
    assert_eq!(code(&with(&["ratio-sup", &fixture("dirac_one.json")])), 0);
    assert_eq!(code(&with(&["ratio-sup", &fixture("dirac_one.json"), "--m", "1"])), 0);
    assert_eq!(code(&with(&["ratio-sup", &fixture("dirac_one.json"), "--m", "0.5"])), 1);
    assert_eq!(code(&["ratio-sup", &fixture("dirac_one.json"), "--grid-r", "1.0"]), 2);
}

#[test]
fn eval_and_dilatation() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["eval", &fixture("qc_c0.2.json"), "--z", "0.5,0"])).unwrap();
    // 0.5/(1 - 0.5) + 0.2 * 0.5
    assert!((v["points"][0]["f"][0].as_f64().unwrap() - 1.1).abs() < 1e-14);
    let csv = stdout(&[
        "dilatation",
        &fixture("qc_c0.2.json"),
        "--z",
        "-0.5,0",
        "--format",
        "csv",
    ]);
    let row: Vec<f64> = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    // ω = c(1 - z)² = 0.2 * 2.25
    assert!((row[2] - 0.45).abs() < 1e-14);
    assert_eq!(code(&["dilatation", &fixture("qc_c0.2.json"), "--z", "1,0"]), 2);
    assert_eq!(code(&["eval", &fixture("qc_c0.2.json"), "--z", "abc"]), 2);
    assert_eq!(code(&["eval", &fixture("qc_c0.2.json")]), 2);
}

#[test]
fn series_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_cmh"))
            .args(["eval", &fixture("polylog_4_3.json"), "--z", "0.5,0"])
            .env("CMH_MAX_TERMS", cap)
            .output()
            .unwrap()
            .status
            .code()
            .unwrap()
    };
    assert_eq!(run("5"), 2);
    assert_eq!(run("1000"), 0);
    assert_eq!(run("many"), 2);
}

#[test]
fn render_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let out_s = out.to_string_lossy();
    let args = [
        "render",
        &fixture("identity.json"),
        "--curve",
        "segment:-0.5,0,0.5,0",
        "--n",
        "5",
        "--out",
        &out_s,
    ];
    let o = cmh(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param,re_z,im_z,re_f,im_f"));
    assert_eq!(lines.count(), 5);
    assert_eq!(
        code(&["render", &fixture("identity.json"), "--curve", "segment:0,0,2,0"]),
        2
    );
    assert_eq!(code(&["render", &fixture("identity.json"), "--curve", "blob"]), 2);
}

#[test]
fn malformed_specs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for (i, body) in [
        "{",
        "[1, 2]",
        r#"{"h": {"family": "dirac", "t": 1}, "g": {"family": "dirac", "t": 0}, "c": 1.0}"#,
        r#"{"h": {"family": "dirac", "t": 2}, "g": {"family": "dirac", "t": 0}, "c": 0.1}"#,
        r#"{"h": {"family": "beta", "a": 2, "c": 1}, "g": {"family": "lebesgue"}, "c": 0.1}"#,
        r#"{"polylog": {"alpha": 4}, "c": 0.5}"#,
        r#"{"h": {"family": "lebesgue"}, "g": {"family": "lebesgue"}, "c": 0.1, "extra": true}"#,
    ]
    .iter()
    .enumerate()
    {
        let p = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&p, body).unwrap();
        let p = p.to_string_lossy().into_owned();
        assert_eq!(code(&["eval", &p, "--z", "0.1,0"]), 2, "{body}");
        assert_eq!(code(&["certify", &p, "--k", "0.5"]), 2, "{body}");
    }
}

#[test]
fn help_and_version() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["certify", "--help"]), 0);
    assert_eq!(code(&[]), 2);
}
