use std::path::PathBuf;
use std::process::{Command, Output};

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibercone")).args(args).output().expect("binary runs")
}

fn path(name: &str) -> String {
    spec(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn verify_exit_codes_follow_verdicts() {
    assert_eq!(run(&["verify", &path("semigroup_4567.spec")]).status.code(), Some(0));
    assert_eq!(run(&["verify", &path("semigroup_3_7_11.spec")]).status.code(), Some(0));
    // depth of G(I) is zero, so the plane theorem is inconclusive
    assert_eq!(run(&["verify", &path("quartic.spec")]).status.code(), Some(3));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["analyze", "/nonexistent/file.spec"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("fibercone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.spec");
    std::fs::write(&bad, "ring polynomial vars x,y\nideal x^2, q\n").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let not_primary = dir.join("np.spec");
    std::fs::write(&not_primary, "ring polynomial vars x,y\nideal x^2, x*y\n").unwrap();
    assert_eq!(run(&["analyze", not_primary.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["analyze", "--json", &path("quartic.spec")]);
    let b = run(&["analyze", "--json", &path("quartic.spec")]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["mu"], "4");
    assert_eq!(v["series.numerator_coeffs"], "1,2,2,-1");
    assert_eq!(v["cm.verdict"], "NotCM");
}

#[test]
fn flags_override_spec_configuration() {
    let out = run(&["hilbert", "--json", "--trunc", "9", &path("semigroup_4567.spec")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["series.trunc"], "9");
    assert_eq!(v["series.mu_vector"].as_str().unwrap().split(',').count(), 10);
    assert_eq!(v["series.numerator"], "1 + 2λ + λ^2");
}

#[test]
fn mixedmult_reports_classification() {
    let out = run(&["mixedmult", "--json", &path("semigroup_3_7_11.spec")]);
    let v = json(&out);
    assert_eq!(v["classification"], "Minimal");
    assert_eq!(v["mu"], "3");
}

#[test]
fn semigroup_search_finds_verified_hits() {
    let out = run(&["search", "--kind", "semigroup", "--class", "almost-minimal", "--budget", "40", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let de = serde_json::Deserializer::from_str(&text).into_iter::<serde_json::Value>();
    let hits: Vec<_> = de.map(|v| v.unwrap()).collect();
    assert!(!hits.is_empty());
    for h in hits {
        assert_eq!(h["classification"], "AlmostMinimal");
        assert_eq!(h["theorem.verdict"], "Match");
    }
}
