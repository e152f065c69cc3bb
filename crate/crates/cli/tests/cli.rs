use std::process::{Command, Output};

fn qsphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsphere")).args(args).output().expect("binary runs")
}

#[test]
fn ktheory_preset() {
    let out = qsphere(&["--suite", "ktheory", "--preset", "s3-quantum"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = report["records"].as_array().unwrap();
    for g in ["G0", "G1"] {
        assert!(records.iter().any(|r| r["name"] == g && r["measured"] == "Z" && r["pass"] == true), "{g}");
    }
}

#[test]
fn relations_at_the_commutative_point() {
    let out = qsphere(&["--suite", "relations", "--p", "0", "--q", "0", "--theta", "0", "--cutoff", "16", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn iso_reference_point_as_text() {
    let out = qsphere(&[
        "--suite", "iso", "--p", "0.5", "--q", "0.5", "--theta", "0.3", "--K", "40", "--cutoff", "24", "--format", "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS iso roundtrip")), "{text}");
}

#[test]
fn failing_checks_exit_one() {
    let out = qsphere(&["--suite", "iso", "--p", "0.7", "--q", "0.7", "--theta", "0", "--K", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--suite", "nonsense"][..],
        &["--bogus-flag"],
        &["--p", "1.5"],
        &["--cutoff", "x"],
        &["--suite", "relations", "--preset", "s3-quantum"],
        &["--tol", "-1"],
    ] {
        assert_eq!(qsphere(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_written_to_file() {
    let path = std::env::temp_dir().join(format!("qsphere-cli-{}.json", std::process::id()));
    let out = qsphere(&["--suite", "lemma-gen", "--theta", "0.5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["suite"], "lemma-gen");
    std::fs::remove_file(path).ok();
}
