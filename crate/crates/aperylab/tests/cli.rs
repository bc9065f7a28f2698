use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn aperylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aperylab"))
        .args(args)
        .env_remove("APERYLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn constants_v12_matches_zeta3_over_6() {
    let o = aperylab(&["constants", "--variety", "V12", "--digits", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("1/6·ζ(3)") && s.contains("pass"), "{s}");
}

#[test]
fn constants_all_has_five_rows() {
    let o = aperylab(&[
        "constants",
        "--variety",
        "all",
        "--terms",
        "200",
        "--digits",
        "30",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["status"] == "pass"));
    assert_eq!(rows[4]["constant"], "1/3·L(χ₃,3)");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        aperylab(&["constants", "--variety", "V99"]).status.code(),
        Some(2)
    );
    assert_eq!(
        aperylab(&["constants", "--digits", "9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        aperylab(&["constants", "--terms", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(aperylab(&["grassmann", "--n", "4"]).status.code(), Some(2));
    assert_eq!(
        aperylab(&["monodromy", "--n", "5", "--e", "1/10", "--u", "1/14"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        aperylab(&["monodromy", "--n", "5", "--e", "abc", "--u", "1/14"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        aperylab(&["modular", "--variety", "V10"]).status.code(),
        Some(2)
    );
}

#[test]
fn warm_cache_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "constants",
        "--variety",
        "V12,V18",
        "--terms",
        "120",
        "--digits",
        "30",
        "--json",
        "--cache-dir",
        d,
    ];
    let cold = aperylab(&args);
    let files: Vec<_> = fs::read_dir(d).unwrap().collect();
    assert_eq!(files.len(), 2);
    let warm = aperylab(&args);
    assert_eq!(cold.stdout, warm.stdout);

    // A shorter run is served from the longer cached prefix.
    let mut short = args;
    short[4] = "60";
    let from_cache = aperylab(&short);
    let dir2 = tempfile::tempdir().unwrap();
    short[9] = dir2.path().to_str().unwrap();
    assert_eq!(from_cache.stdout, aperylab(&short).stdout);
}

#[test]
fn corrupted_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "constants",
        "--variety",
        "V12",
        "--terms",
        "80",
        "--digits",
        "20",
        "--json",
        "--cache-dir",
        d,
    ];
    let cold = aperylab(&args);
    let entry = fs::read_dir(d).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&entry).unwrap();
    // a_2 = 73 becomes 74 inside the payload; the checksum stays
    let tampered = text.replacen(r#"\"73\""#, r#"\"74\""#, 1);
    assert_ne!(text, tampered);
    fs::write(&entry, tampered).unwrap();
    assert_eq!(aperylab(&args).stdout, cold.stdout);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_aperylab"))
        .args([
            "constants",
            "--variety",
            "V14",
            "--terms",
            "50",
            "--digits",
            "15",
        ])
        .env("APERYLAB_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn exported_recurrence_reimports_to_the_same_limit() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("v10.json");
    let f = file.to_str().unwrap();
    let o = aperylab(&["export", "--variety", "V10", "--out", f]);
    assert_eq!(o.status.code(), Some(0));
    let rec: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(rec["valid_from"], 1);
    assert_eq!(rec["normalization"]["b_first_value"], "1");

    let lim = json(&aperylab(&[
        "limit", f, "--terms", "150", "--digits", "30", "--json",
    ]));
    let c = json(&aperylab(&[
        "constants",
        "--variety",
        "V10",
        "--terms",
        "150",
        "--digits",
        "30",
        "--json",
    ]));
    assert_eq!(lim, c["rows"][0]["limit"]);
    assert!(lim["certified_digits"].as_u64().unwrap() >= 30);
}

#[test]
fn apery_recurrence_file_gives_zeta3_over_6() {
    let dir = tempfile::tempdir().unwrap();
    // n³u(n) = (34n³ − 51n² + 27n − 5)u(n−1) − (n−1)³u(n−2)
    let f = write(
        dir.path(),
        "apery.json",
        r#"{"shifts":[{"i":0,"poly":["0","0","0","1"]},
                      {"i":1,"poly":["5","-27","51","-34"]},
                      {"i":2,"poly":["-1","3","-3","1"]}],
            "valid_from":1,
            "normalization":{"a0":"1","b_first_index":1,"b_first_value":"1"}}"#,
    );
    let lim = json(&aperylab(&[
        "limit", &f, "--terms", "100", "--digits", "30", "--json",
    ]));
    assert!(
        lim["decimal"]
            .as_str()
            .unwrap()
            .starts_with("2.0034281719326571423"),
        "{lim}"
    );
}

#[test]
fn constant_recurrence_with_zero_b_has_limit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "c.json",
        r#"{"shifts":[{"i":0,"poly":["1"]},{"i":1,"poly":["-1"]}],"valid_from":1,
            "normalization":{"a0":"1","b_first_index":1,"b_first_value":"0"}}"#,
    );
    let lim = json(&aperylab(&["limit", &f, "--json"]));
    assert_eq!(lim["value"]["digits"], "0");
}

#[test]
fn bad_recurrence_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = write(dir.path(), "t.json", r#"{"shifts":"#);
    let no_norm = write(
        dir.path(),
        "n.json",
        r#"{"shifts":[{"i":0,"poly":["1"]},{"i":1,"poly":["-1"]}],"valid_from":1}"#,
    );
    let leading = write(
        dir.path(),
        "l.json",
        r#"{"shifts":[{"i":0,"poly":["-3","1"]},{"i":1,"poly":["-1"]}],"valid_from":1,
            "normalization":{"a0":"1","b_first_index":1,"b_first_value":"1"}}"#,
    );
    let bad_rational = write(
        dir.path(),
        "r.json",
        r#"{"shifts":[{"i":0,"poly":["1/0"]}],"valid_from":1,
            "normalization":{"a0":"1","b_first_index":1,"b_first_value":"1"}}"#,
    );
    for f in [&truncated, &no_norm, &leading, &bad_rational] {
        let o = aperylab(&["limit", f]);
        assert_eq!(o.status.code(), Some(2), "{f}");
    }
    let err = String::from_utf8(aperylab(&["limit", &leading]).stderr).unwrap();
    assert!(err.contains("n = 3"), "{err}");
    assert_eq!(
        aperylab(&["limit", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn modular_v12_both_identities() {
    let o = aperylab(&["modular", "--variety", "V12", "--order", "20", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    let ids = j["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 2);
    for r in ids {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["order_checked"], 20);
        assert!(r["first_mismatch"].is_null());
    }
}

#[test]
fn grassmann_n5_reports_pi_squared_over_150() {
    let o = aperylab(&["grassmann", "--n", "5", "--digits", "25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("π²/150 6.579736267392905745889"), "{s}");
}

#[test]
fn monodromy_report_shape_and_determinism() {
    let args = [
        "monodromy",
        "--n",
        "6",
        "--e",
        "1/10",
        "--u",
        "0.0714",
        "--json",
    ];
    let a = aperylab(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, aperylab(&args).stdout);
    let j = json(&a);
    assert_eq!(j["N"], 6);
    assert_eq!(j["u"], "357/5000");
    assert_eq!(j["ordering"], serde_json::json!([1, 2, 3, 4, 5, 6]));
    assert_eq!(j["status"], "pass");
    // six eigen-residuals, two wedge residuals, the route gap
    assert_eq!(j["residuals"].as_array().unwrap().len(), 9);
}
