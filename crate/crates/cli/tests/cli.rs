use std::path::Path;
use std::process::{Command, Output};

fn mvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvlab"))
        .args(args)
        .env_remove("MVLAB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn ok(args: &[&str]) -> String {
    let out = mvlab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn fails(args: &[&str]) -> String {
    let out = mvlab(args);
    assert!(!out.status.success(), "{args:?} should fail");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(!err.trim().is_empty());
    err
}

#[test]
fn agn_value() {
    assert_eq!(ok(&["agn", "--g", "2", "--n", "1"]), "29/640");
    assert_eq!(
        ok(&["agn", "--g", "2", "--n", "1", "--format", "json"]),
        r#"{"g":2,"n":1,"value":"29/640"}"#
    );
    assert_eq!(
        ok(&["--format", "csv", "agn", "--g", "0", "--n", "6"]),
        "g,n,value\n0,6,15/1"
    );
}

#[test]
fn methods_agree() {
    for (g, n) in [(0, 5), (1, 3), (2, 2), (3, 6), (4, 4)] {
        let (g, n) = (g.to_string(), n.to_string());
        let outputs: Vec<String> = ["direct", "alt", "series"]
            .iter()
            .map(|m| {
                ok(&[
                    "--format", "json", "agn", "--g", &g, "--n", &n, "--method", m,
                ])
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{outputs:?}");
    }
}

#[test]
fn volume_and_sv() {
    assert_eq!(
        ok(&["volume", "--g", "1", "--n", "1"]),
        r#"{"coeff":"2/3","pi_half_exponent":4}"#
    );
    assert_eq!(
        ok(&["volume", "--g", "0", "--n", "4", "--format", "json"]),
        r#"{"coeff":"2/1","g":0,"n":4,"pi_half_exponent":4}"#
    );
    let approx = ok(&["volume", "--g", "1", "--n", "1", "--numeric", "64"]);
    assert!(approx.contains(r#""approx":"6.5797362673"#), "{approx}");
    assert_eq!(
        ok(&["sv", "--g", "0", "--n", "5"]),
        r#"{"coeff":"5/3","pi_half_exponent":-4}"#
    );
    let csv = ok(&["sv", "--g", "1", "--n", "1", "--format", "csv"]);
    assert_eq!(csv, "g,n,coeff,pi_half_exponent,approx\n1,1,3/1,-4,");
}

#[test]
fn json_round_trips_byte_identically() {
    for args in [
        vec!["agn", "--g", "3", "--n", "2"],
        vec!["volume", "--g", "2", "--n", "3", "--numeric", "128"],
        vec!["sv", "--g", "2", "--n", "1"],
        vec!["genus", "--g", "3"],
        vec!["verify", "--suite", "closed", "--nmax", "6"],
        vec!["asym", "--n", "0", "--gmax", "20", "--order", "3"],
    ] {
        let mut full = vec!["--format", "json"];
        full.extend(args.iter());
        let text = stdout(&mvlab(&full));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), text, "{args:?}");
    }
}

#[test]
fn genus_coefficients() {
    assert_eq!(
        ok(&["genus", "--g", "2"]),
        "C_{2,0} = 7/1440\nC_{2,1} = 5/1152\nC_{2,2} = 7/5760"
    );
    assert_eq!(
        ok(&["genus", "--g", "2", "--format", "json"]),
        r#"{"c":["7/1440","5/1152","7/5760"],"g":2}"#
    );
}

#[test]
fn verify_suites() {
    assert_eq!(ok(&["verify", "--suite", "table1"]), "35/35 entries match");
    for suite in ["paths", "funceq", "closed", "lambda", "iz"] {
        ok(&["verify", "--suite", suite, "--gmax", "5"]);
    }
    let json = ok(&["verify", "--suite", "table1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["suite"], "table1");
    assert_eq!(v["pass"], true);
    assert!(v["cases"].is_array());
}

#[test]
fn asym_report() {
    let json = stdout(&mvlab(&[
        "--format", "json", "asym", "--n", "0", "--gmax", "20", "--order", "5",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["target"], "vol");
    assert_eq!(v["widened"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 4);
    assert_eq!(v["cases"][0]["pass"], true);
    let sv = stdout(&mvlab(&[
        "--format", "json", "asym", "--target", "sv", "--n", "0", "--gmax", "60", "--order", "5",
    ]));
    let v: serde_json::Value = serde_json::from_str(&sv).unwrap();
    assert_eq!(v["target"], "sv");
    assert_eq!(v["widened"], false);
    assert_eq!(v["cases"][0]["k"], 0);
    assert_eq!(v["cases"][0]["pass"], true);
}

#[test]
fn failing_suite_exits_nonzero() {
    // C_1 and C_3 rows disagree with the published polynomials
    let out = mvlab(&[
        "asym", "--target", "sv", "--n", "0", "--gmax", "60", "--order", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn errors_are_one_line() {
    for args in [
        vec!["sv", "--g", "1", "--n", "0"],
        vec!["volume", "--g", "0", "--n", "2"],
        vec!["agn", "--g", "1", "--n", "1", "--method", "alt"],
        vec!["genus", "--g", "1"],
        vec!["asym", "--gmax", "10"],
    ] {
        let err = fails(&args);
        assert_eq!(err.trim().lines().count(), 1, "{err}");
        assert!(err.starts_with("error: "));
    }
    fails(&["agn", "--g", "1"]);
    fails(&["--unknown"]);
}

fn table_files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

#[test]
fn table_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(
        ok(&["--cache-dir", d, "table", "--gmax", "2", "--nmax", "3"])
            .starts_with("wrote 12 entries")
    );
    assert_eq!(table_files(dir.path()), vec!["agn-2-3.tsv"]);
    let out = Command::new(env!("CARGO_BIN_EXE_mvlab"))
        .args(["--format", "json", "cache"])
        .env("MVLAB_CACHE", d)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["files"][0]["entries"], 12);

    let explicit = dir.path().join("explicit.tsv");
    ok(&[
        "table",
        "--gmax",
        "15",
        "--nmax",
        "8",
        "--method",
        "series",
        "--out",
        explicit.to_str().unwrap(),
    ]);
    let golden = include_str!("../../core/tests/golden/agn_15_8.tsv");
    assert_eq!(std::fs::read_to_string(&explicit).unwrap(), golden);

    std::fs::write(dir.path().join("broken.tsv"), "# agn-table v9\n").unwrap();
    let err = fails(&["cache", "--dir", d]);
    assert!(err.contains("broken.tsv"), "{err}");
    assert!(ok(&["cache", "--dir", d, "--clear"]).contains("removed 3"));
    assert!(table_files(dir.path()).is_empty());
}
