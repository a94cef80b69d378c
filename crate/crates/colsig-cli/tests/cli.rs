use std::process::{Command, Output};

use serde_json::Value;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");

fn colsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colsig"))
        .args(args)
        .env_remove("COLSIG_PRECISION")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = colsig(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn hopf_link() {
    let v = json(&["signature", "braid", "--word", "1 1", "--colors", "1,1", "--omega", "1/3"]);
    assert_eq!(v["signature"], -1);
    assert_eq!(v["guaranteed"], true);
}

#[test]
fn ccomplex_torus_link() {
    let file = format!("{DATA}/torus_link_2_4.json");
    let v = json(&["signature", "ccomplex", "--file", &file, "--omega", "1/3,1/5"]);
    assert_eq!(v["signature"], -1);
}

#[test]
fn empty_word_is_the_unlink() {
    let out = colsig(&["signature", "braid", "--word", "", "--colors", "1", "--omega", "1/3", "--output", "text"]);
    assert!(stdout(&out).contains("signature: 0"));
}

#[test]
fn trefoil_grid_as_csv() {
    let out = colsig(&["signature", "braid", "--word", "1 1 1", "--colors", "1,1", "--grid", "5", "--output", "csv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("guaranteed,"));
    assert!(lines[1..].iter().all(|l| l.ends_with(",-2")));
}

#[test]
fn grid_skips_unguaranteed_points() {
    let args = ["signature", "braid", "--word", "1 1 1 1", "--colors", "1,2", "--grid", "4"];
    let out = colsig(&args);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped 9"));
    let forced = json(&[&args[..], &["--force"]].concat());
    assert_eq!(forced.as_array().unwrap().len(), 9);
}

#[test]
fn symbolic_burau() {
    let out = colsig(&["burau", "--word", "1", "--colors", "1,1", "--symbolic", "--output", "text"]);
    assert_eq!(stdout(&out).trim(), "(-t)");
}

#[test]
fn symbolic_form() {
    let v = json(&["form", "--colors", "1,1", "--symbolic"]);
    assert_eq!(v["rows"], 1);
}

#[test]
fn meyer_of_a_half_twist() {
    let out = colsig(&["meyer", "--alpha", "1", "--beta", "1", "--colors", "1,1", "--omega", "1/3", "--output", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["meyer"], 1);
}

#[test]
fn defect_at_a_guaranteed_point() {
    let v = json(&["defect", "--w1", "1", "--w2", "1", "--colors", "1,1", "--omega", "1/3"]);
    assert_eq!((v["lhs"].as_i64(), v["rhs"].as_i64()), (Some(-1), Some(-1)));
}

#[test]
fn bound_column() {
    let v = json(&["bound", "--word", "1 1 1 2 2 2", "--colors", "1,1,1", "--omega", "2/5"]);
    assert_eq!(v["unlinking_bound"], 2);
}

#[test]
fn maslov_example() {
    let file = format!("{DATA}/maslov_example.json");
    let v = json(&["maslov", "--file", &file]);
    assert_eq!(v["maslov"], 1);
    assert_eq!(v["maslov"], v["quotient"]);
    assert_eq!(v["maslov"], v["kernel"]);
}

#[test]
fn verify_suite() {
    let v = json(&["verify", "--suite", "unitarity", "--trials", "5"]);
    assert_eq!(v["failed"], 0);
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &["signature", "braid", "--word", "1 x", "--colors", "1,1", "--omega", "1/3"][..],
        &["signature", "braid", "--word", "1", "--colors", "1,2", "--omega", "1/3,1/5"],
        &["verify", "--suite", "nope"],
        &["burau"],
    ] {
        assert_eq!(colsig(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn outside_guarantee_exits_3() {
    let args = ["signature", "braid", "--word", "1 1", "--colors", "1,2", "--omega", "1/2,1/4"];
    assert_eq!(colsig(&args).status.code(), Some(3));
    let v = json(&[&args[..], &["--force"]].concat());
    assert_eq!(v["guaranteed"], false);
}

#[test]
fn precision_exhausted_exits_4() {
    // form entries inside the guard band at the precision cap
    let src = std::fs::read_to_string(format!("{DATA}/maslov_example.json")).unwrap();
    let path = std::env::temp_dir().join(format!("colsig-wall-{}.json", std::process::id()));
    std::fs::write(&path, src.replace("[[0, 1], [0, 0], [0, 0], [0, -1]]", "[[0, 5e-279], [0, 0], [0, 0], [0, -5e-279]]")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_colsig"))
        .args(["maslov", "--file", path.to_str().unwrap()])
        .env("COLSIG_PRECISION", "1024")
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(4));
}
