use std::process::{Command, Output};

fn fqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn enumerate_examples() {
    let u = fqg(&["enumerate", "--category", "u", "--lower", "ab"]);
    assert_eq!(u.status.code(), Some(0));
    assert_eq!(json(&u)["count"], 1);
    assert_eq!(json(&u)["diagrams"][0]["pairs"], serde_json::json!([[0, 3], [1, 2]]));
    assert_eq!(json(&fqg(&["enumerate", "--category", "s", "--lower", "aa"]))["count"], 2);
    let empty = fqg(&["enumerate", "--category", "s-prime", "--lower", "a", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&empty.stdout), "index,upper,lower,pairs\n");
}

#[test]
fn moments_and_level() {
    let m = fqg(&["moments", "--category", "o", "--k", "8", "--format", "csv"]);
    let text = String::from_utf8(m.stdout).unwrap();
    let counts: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(counts, ["1", "0", "1", "0", "2", "0", "5", "0", "14"]);
    assert_eq!(json(&fqg(&["level", "--category", "s"]))["level"]["Finite"], 0);
    assert_eq!(json(&fqg(&["level", "--category", "s-prime", "--k", "3"]))["level"]["AboveCap"], 3);
}

#[test]
fn closure_check_verdicts() {
    let ok = fqg(&["closure-check", "--category", "o"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stderr).contains("round 1"));
    // The two four-blocks of k are rotations of each other, so one is redundant.
    let redundant = fqg(&["closure-check", "--category", "k", "--drop-generator", "block4_ab"]);
    assert_eq!(redundant.status.code(), Some(0));
    let bad = fqg(&["closure-check", "--category", "s", "--drop-generator", "unit_cap"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(json(&bad)["witness"].is_object());
}

#[test]
fn roundtrips() {
    for c in ["o", "s-prime", "u", "p"] {
        let out = fqg(&["roundtrip", "--category", c, "--max-points", "10"]);
        assert_eq!(out.status.code(), Some(0), "{c}");
    }
    let hk = json(&fqg(&["roundtrip", "--category", "h", "--max-points", "10"]));
    assert_eq!(hk["direction"]["complexify_h_is_k"], true);
    assert!(hk["direction"]["literal_reading"].as_str().unwrap().starts_with("rejected"));
}

#[test]
fn gram_matches_span() {
    let g = json(&fqg(&["gram", "--category", "s", "--lower", "aaaa", "--n", "2"]));
    assert_eq!(g["rank"], 8);
    assert_eq!(g["span_dimension"], 8);
    let csv = fqg(&["gram", "--category", "s", "--lower", "aa", "--n", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&csv.stdout), "cell,n,diagram_count,rank\ns(∅,aa),2,2,2\n");
}

#[test]
fn group_check_from_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("klein.json");
    std::fs::write(
        &table,
        r#"{"elements":["e","a","b","ab"],"table":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],"generators":["a","b"]}"#,
    )
    .unwrap();
    let t = table.to_str().unwrap();
    let ok = fqg(&["group-check", "--table", t, "--radius", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["lambda"], serde_json::json!(["e", "ab"]));
    let neg = fqg(&["group-check", "--table", t, "--radius", "4", "--negative-control"]);
    assert_eq!(neg.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(fqg(&["enumerate", "--category", "q"]).status.code(), Some(2));
    assert_eq!(fqg(&["enumerate", "--category", "o", "--lower", "ab"]).status.code(), Some(2));
    assert_eq!(fqg(&["enumerate", "--category", "s", "--lower", "aaaaaaa"]).status.code(), Some(0));
    assert_eq!(fqg(&["gram", "--category", "s", "--lower", "aa", "--n", "0"]).status.code(), Some(2));
    assert_eq!(fqg(&["group-check", "--group", "Z9"]).status.code(), Some(2));
    assert_eq!(fqg(&["group-check", "--group", "Z2", "--radius", "9"]).status.code(), Some(2));
    assert_eq!(fqg(&["closure-check", "--category", "s", "--max-points", "40"]).status.code(), Some(2));
    assert_eq!(fqg(&[]).status.code(), Some(2));
}

#[test]
fn out_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("run{i}.json"))).collect();
    for p in &paths {
        let out = fqg(&["roundtrip", "--category", "k", "--max-points", "10", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
}
