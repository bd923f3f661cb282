use std::process::{Command, Output};

use mzv_core::verify::ReportDocument;
use tempfile::TempDir;

fn mzv(cache: &TempDir, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(args)
        .env("MZV_CACHE_DIR", cache.path())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_value_and_bound() {
    let dir = TempDir::new().unwrap();
    let o = mzv(&dir, &["eval", "--index", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1.2020569031595942853997"), "{}", stdout(&o));
    assert!(stdout(&o).contains('±'));
}

#[test]
fn eval_json_and_interpolated() {
    let dir = TempDir::new().unwrap();
    let o = mzv(
        &dir,
        &["eval", "--index", "1,2", "--variant", "t", "--t", "1/3", "--format", "json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["t"], "1/3");
    assert_eq!(v["variant"], "t");
    assert!(v["error"].as_f64().unwrap() < 1e-20);
}

#[test]
fn non_admissible_needs_reg() {
    let dir = TempDir::new().unwrap();
    let o = mzv(&dir, &["eval", "--index", "2,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[usage]"));

    let o = mzv(&dir, &["eval", "--index", "2,1", "--reg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("-2.404113806319188570799"));

    let o = mzv(&dir, &["eval", "--index", "2,1", "--reg", "--symbolic-t"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("*T"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["eval", "--index", "3", "--eps", "0"][..],
        &["eval", "--index", "3", "--variant", "t", "--t", "0.5"],
        &["eval", "--index", "0,3"],
        &["eval", "--index", "3", "--variant", "nope"],
        &["phi", "--max-weight", "13"],
        &["verify", "--identity", "nope"],
        &["verify"],
        &["verify", "--all", "--max-weight", "20"],
    ] {
        let o = mzv(&dir, args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table_is_csv() {
    let dir = TempDir::new().unwrap();
    let o = mzv(&dir, &["table", "--variant", "star", "--max-weight", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,j,k,coefficient,error_bound"));
    let rows: Vec<&str> = lines.collect();
    // monomials of total degree <= 4 in three variables
    assert_eq!(rows.len(), 35);
    let z = rows.iter().find(|r| r.starts_with("0,0,1,")).unwrap();
    assert!(z.contains("-1.64493406684822643647"), "{z}");
}

#[test]
fn verify_json_round_trips() {
    let dir = TempDir::new().unwrap();
    let o = mzv(
        &dir,
        &["verify", "--identity", "lemma4", "--identity", "cor1", "--max-weight", "5"],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let doc = ReportDocument::from_json(&text).unwrap();
    assert!(doc.pass);
    assert_eq!(doc.reports.len(), 2);
    assert_eq!(doc.to_json().unwrap(), text.trim_end());
    assert!(doc.reports.iter().all(|r| r.elapsed_ms.is_none()));
}

#[test]
fn verify_text_and_timing() {
    let dir = TempDir::new().unwrap();
    let o = mzv(&dir, &["verify", "--identity", "specializations", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS specializations"));

    let o = mzv(&dir, &["verify", "--identity", "lemma6", "--timing"]);
    let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
    assert!(doc.reports[0].elapsed_ms.is_some());
}

#[test]
fn cache_stats_and_clear() {
    let dir = TempDir::new().unwrap();
    assert_eq!(mzv(&dir, &["eval", "--index", "2,3"]).status.code(), Some(0));
    let stats = stdout(&mzv(&dir, &["cache", "stats"]));
    assert!(!stats.contains("entries: 0"), "{stats}");

    // a second evaluation is served from the cache and prints the same
    let a = stdout(&mzv(&dir, &["eval", "--index", "2,3"]));
    let b = stdout(&mzv(&dir, &["--no-cache", "eval", "--index", "2,3"]));
    assert_eq!(a, b);

    assert_eq!(mzv(&dir, &["cache", "clear"]).status.code(), Some(0));
    assert!(stdout(&mzv(&dir, &["cache", "stats"])).contains("entries: 0"));
}

#[test]
fn corrupt_cache_is_a_runtime_error() {
    let dir = TempDir::new().unwrap();
    mzv(&dir, &["eval", "--index", "3"]);
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&file, "not json\n").unwrap();
    let o = mzv(&dir, &["eval", "--index", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache clear"));
}
