use std::path::PathBuf;
use std::process::Command;

use qhelix_cli::report::{render_json, render_table};
use qhelix_cli::{execute, CliError, Options};

const GOLDEN: &[(&str, &str, &[&str])] = &[
    ("quadric_commutative", "hilbert", &[]),
    ("quadric_commutative", "classify-standard", &[]),
    ("quadric_commutative", "ext", &["m=X", "n=Y", "q=1"]),
    ("quadric_commutative", "helix", &[]),
    ("quadric_sigma", "classify-standard", &[]),
    ("quadric_sigma", "cofa", &[]),
    ("cubic_as3", "hilbert", &[]),
    ("cubic_as3", "regularity", &[]),
    ("poly_x_deg3", "hilbert", &[]),
    ("qvas_counterexample", "regularity", &[]),
];

fn golden_path(manifest: &str, command: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{manifest}.{command}.json"))
}

fn args(a: &[&str]) -> Vec<String> {
    a.iter().map(|s| s.to_string()).collect()
}

fn report(manifest: &str, command: &str, a: &[&str]) -> (String, i32) {
    let r = execute(manifest, command, &args(a), &Options::default()).unwrap();
    (render_json(&r.value), r.exit_code)
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (m, c, a) in GOLDEN {
        let (text, _) = report(m, c, a);
        let path = golden_path(m, c);
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(text, want, "{m} {c} differs from {}", path.display());
    }
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    for (m, c, a) in [("quadric_commutative", "hom", &["m=X", "n=A"][..]), ("quadric_sigma", "mf-verify", &[][..])] {
        let (first, _) = report(m, c, a);
        let (second, _) = report(m, c, a);
        assert_eq!(first, second);
        let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
        assert_eq!(render_json(&parsed), first);
    }
}

#[test]
fn hilbert_series_of_the_quadric() {
    let r = execute("quadric_commutative", "hilbert", &[], &Options::default()).unwrap();
    let series: Vec<i64> = serde_json::from_value(r.value["result"]["series"].clone()).unwrap();
    let expected: Vec<i64> = (0..=8).map(|i| (i + 1) * (i + 1)).collect();
    assert_eq!(series, expected);
    assert_eq!(r.value["result"]["closed_form"], "(1+t)/(1-t)^3");
    assert_eq!(r.value["certified_up_to_degree"], 8);
    assert_eq!(r.value["manifest"]["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn exit_codes() {
    let code = |m: &str, c: &str, a: &[&str]| execute(m, c, &args(a), &Options::default()).map(|r| r.exit_code);
    assert_eq!(code("quadric_sigma", "classify-standard", &[]), Ok(0));
    assert_eq!(code("qvas_counterexample", "regularity", &[]), Ok(1));
    assert_eq!(code("quadric_commutative", "mcm", &["module=k"]), Ok(1));
    assert_eq!(code("quadric_commutative", "mcm", &["module=X"]), Ok(0));
    assert_eq!(code("quadric_sigma", "iso", &["m=syz(X)(1)", "n=Y"]), Ok(1));
    // A = S/(f) has infinite global dimension: no termination, no verdict
    assert_eq!(code("quadric_commutative", "regularity", &[]), Ok(3));
    assert!(matches!(code("quadric_commutative", "nope", &[]), Err(CliError::Usage(_))));
    assert!(matches!(code("quadric_commutative", "hom", &["m=X"]), Err(CliError::Usage(_))));
    assert!(matches!(code("quadric_commutative", "hilbert", &["bogus=1"]), Err(CliError::Usage(_))));
    assert!(matches!(code("quadric_sigma", "helix", &[]), Err(CliError::Usage(_))));
    assert!(matches!(code("/nonexistent.toml", "hilbert", &[]), Err(CliError::Usage(_))));
}

#[test]
fn failures_still_produce_reports() {
    let r = execute("cubic_as3", "koszul", &[], &Options::default()).unwrap();
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.value["verdict"], "fail");
    assert!(r.value["result"]["error"].as_str().unwrap().contains("quadratic"));
}

#[test]
fn options_override_the_manifest() {
    let opts = Options { truncation: Some(4), field: Some(qhelix::exactla::Field::Prime(101)), ..Options::default() };
    let r = execute("quadric_commutative", "hilbert", &[], &opts).unwrap();
    assert_eq!(r.value["result"]["series"], serde_json::json!([1, 4, 9, 16, 25]));
    assert_eq!(r.value["bounds"]["truncation"], 4);
    assert_eq!(r.value["bounds"]["field"], "F_101");

    let opts = Options { window: Some((-2, 2)), ..Options::default() };
    let r = execute("quadric_commutative", "ext", &args(&["m=X", "n=Y", "q=1"]), &opts).unwrap();
    assert_eq!(r.value["result"]["table"], serde_json::json!({ "-1": 1 }));
    assert_eq!(r.value["result"]["degrees"], serde_json::json!([-2, -1, 0, 1, 2]));
}

#[test]
fn manifest_files_and_table_output() {
    let dir = std::env::temp_dir().join(format!("qhelix-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("plane.toml");
    std::fs::write(&path, "[algebra]\ngenerators = [\"x\", \"y\"]\nrelations = [\"x*y - y*x\"]\ntruncation = 5\n")
        .unwrap();
    let r = execute(path.to_str().unwrap(), "hilbert", &[], &Options::default()).unwrap();
    assert_eq!(r.value["manifest"]["name"], "plane");
    assert_eq!(r.value["result"]["series"], serde_json::json!([1, 2, 3, 4, 5, 6]));
    let table = render_table(&r.value);
    assert!(table.contains("closed_form: 1/(1-t)^2"), "{table}");

    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "[algebra]\ngenerators = [\"x\"]\nrelations = [\"x*q\"]\ntruncation = 2\n").unwrap();
    assert!(matches!(execute(bad.to_str().unwrap(), "hilbert", &[], &Options::default()), Err(CliError::Parse(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes_and_out_file() {
    let bin = env!("CARGO_BIN_EXE_qhelix");
    let status = |a: &[&str]| Command::new(bin).args(a).output().unwrap();
    let o = status(&["run", "classify-standard", "quadric_sigma"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["classification"], "non-standard");

    assert_eq!(status(&["run", "regularity", "qvas_counterexample"]).status.code(), Some(1));
    assert_eq!(status(&["run", "hilbert", "quadric_commutative", "--window", "3..1"]).status.code(), Some(2));
    assert_eq!(status(&["run", "hilbert", "quadric_commutative", "--field", "p:4"]).status.code(), Some(2));
    assert_eq!(status(&["run", "regularity", "quadric_commutative"]).status.code(), Some(3));

    let out = std::env::temp_dir().join(format!("qhelix-out-{}.json", std::process::id()));
    let o = status(&["run", "hilbert", "poly_x_deg3", "--window", "-4..8", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).unwrap();
    let (direct, _) = {
        let opts = Options { window: Some((-4, 8)), ..Options::default() };
        let r = execute("poly_x_deg3", "hilbert", &[], &opts).unwrap();
        (render_json(&r.value), r.exit_code)
    };
    assert_eq!(text, direct);

    let o = status(&["list"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("qvas_counterexample"));
}
