use std::fs;
use std::process::Command;

use petitlab::cli::parse::{parse_central_poly, parse_skew_poly};
use petitlab::cli::run_with_args;
use petitlab::gf::make_tower;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut full = vec!["petitlab"];
    full.extend_from_slice(args);
    let code = run_with_args(full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    out
}

#[test]
fn mclm_and_similar() {
    assert_eq!(
        ok(&["mclm", "--p", "2", "--n", "2", "--f", "t^2+w"]).trim(),
        "x^2+x+1"
    );
    let out = ok(&[
        "similar", "--p", "2", "--n", "2", "--f", "t^2+w", "--g", "t^2+w+1",
    ]);
    assert!(out.contains("u = t"), "{out}");
    let out = ok(&[
        "similar", "--p", "2", "--n", "2", "--f", "t^2+w", "--g", "t^2+w",
    ]);
    assert!(out.contains("u = 1"), "{out}");
    let out = ok(&[
        "similar",
        "--p",
        "3",
        "--n",
        "2",
        "--f",
        "t^2+(w+1)*t+1",
        "--g",
        "t^2+t+w+1",
    ]);
    assert!(out.contains("not similar"), "{out}");
}

#[test]
fn count_reports() {
    let out = ok(&["count", "--p", "3", "--n", "2", "--m", "2"]);
    for line in [
        "N(q,m) = 3",
        "M(q,m) formula = 2",
        "M(q,m) Burnside = 2",
        "M(q,m) orbits = 2",
    ] {
        assert!(out.contains(line), "{out}");
    }
    assert!(out.contains("bounds: 3/2 <= M <= 3"), "{out}");
    assert!(out.contains("phi(n)/2 * M = 1"), "{out}");
    let out = ok(&["count", "--p", "2", "--h", "2", "--n", "2", "--m", "2"]);
    assert!(
        out.contains("N(q,m) = 6") && out.contains("phi(n)/2 * M = 1/2"),
        "{out}"
    );
}

#[test]
fn orbits_listing() {
    let out = ok(&["orbits", "--p", "2", "--n", "2", "--m", "3"]);
    assert!(out.contains("2 polynomials, 2 orbits, |G| = 2"), "{out}");
}

#[test]
fn sandler_and_its_hypotheses() {
    let out = ok(&[
        "sandler", "--p", "2", "--n", "2", "--c", "w", "--d", "w+1", "--m", "2",
    ]);
    assert!(out.contains("verified: true"), "{out}");
    assert_eq!(
        run(&["sandler", "--p", "2", "--n", "2", "--c", "w", "--d", "1", "--m", "2"]).0,
        1
    );
}

#[test]
fn code_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let path = path.to_str().unwrap();
    let out = ok(&[
        "code", "--p", "2", "--n", "2", "--f", "t^2+w", "--out", path,
    ]);
    assert!(out.contains("16"), "{out}");
    let json: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(json["codewords"].as_array().map(Vec::len), Some(16));
}

#[test]
fn classify_is_deterministic_and_parsable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let csv = dir.path().join("a.csv");
    let args = ["classify", "--p", "3", "--n", "2", "--m", "2"];
    let with = |out: &std::path::Path, extra: &[&str]| {
        let mut v: Vec<&str> = args.to_vec();
        v.extend_from_slice(&["--out", out.to_str().unwrap()]);
        v.extend_from_slice(extra);
        ok(&v);
    };
    with(&a, &["--csv", csv.to_str().unwrap()]);
    with(&b, &[]);
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());

    let json: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(json["orbit_count_formula"], 2);
    assert_eq!(json["orbit_count_oracle"], 2);
    let k = make_tower(3, 1, 2, 1, None).unwrap();
    for orbit in json["orbits"].as_array().unwrap() {
        let canonical = orbit["canonical"].as_str().unwrap();
        assert_eq!(
            parse_central_poly(&k, canonical).unwrap().format(&k),
            canonical
        );
        let rep = orbit["representative"].as_str().unwrap();
        assert_eq!(parse_skew_poly(&k, rep).unwrap().format(&k), rep);
        for cert in orbit["certificates"].as_array().unwrap() {
            assert_eq!(cert["verified"], true);
            assert_eq!(cert["sha256"].as_str().unwrap().len(), 64);
        }
    }
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 3);
    assert!(rows.starts_with("orbit,canonical,"));
}

#[test]
fn envelope_and_usage_errors() {
    assert_eq!(run(&["classify", "--p", "2", "--n", "5", "--m", "4"]).0, 3);
    assert_eq!(run(&["code", "--p", "2", "--n", "5", "--f", "t^4+w"]).0, 3);
    assert_eq!(run(&["mclm", "--p", "2", "--n", "2", "--f", "t^2+"]).0, 1);
    assert_eq!(run(&["mclm", "--p", "4", "--n", "2", "--f", "t"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn conway_table_and_explicit_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("conway.txt");
    fs::write(&table, "# p d c_0 .. c_d\n3 2 2 2 1\n").unwrap();
    let table = table.to_str().unwrap();
    let from_table = ok(&[
        "mclm",
        "--p",
        "3",
        "--n",
        "2",
        "--conway-table",
        table,
        "--f",
        "t^2+w",
    ]);
    let explicit = ok(&[
        "mclm",
        "--p",
        "3",
        "--n",
        "2",
        "--modulus",
        "2,2,1",
        "--f",
        "t^2+w",
    ]);
    assert_eq!(from_table, explicit);
    let both = [
        "mclm",
        "--p",
        "3",
        "--n",
        "2",
        "--modulus",
        "2,2,1",
        "--conway-table",
        table,
        "--f",
        "t",
    ];
    assert_eq!(run(&both).0, 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_petitlab");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["mclm", "--p", "2", "--n", "2", "--f", "t^2+w"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "x^2+x+1");
    assert_eq!(
        status(&["classify", "--p", "2", "--n", "5", "--m", "4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(status(&["mclm", "--p", "2"]).status.code(), Some(1));
    let threaded = Command::new(bin)
        .env("PETITLAB_THREADS", "2")
        .args(["count", "--p", "2", "--n", "2", "--m", "3"])
        .output()
        .unwrap();
    assert!(threaded.status.success());
}
