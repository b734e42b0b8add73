use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn diagram(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_diagram"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(s) = stdin {
        pipe.write_all(s.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const ID1: &str = r#"{"m":1,"n":1,"blocks":[[{"side":"In","index":1},{"side":"Out","index":1}]]}"#;
const ID2: &str = r#"{"m":2,"n":2,"blocks":[[{"side":"In","index":1},{"side":"Out","index":1}],[{"side":"In","index":2},{"side":"Out","index":2}]]}"#;
const CUP_CAP: &str = r#"{"m":2,"n":2,"partners":[
  {"from":{"side":"In","index":1},"to":{"offset":0,"side":"In","index":2}},
  {"from":{"side":"In","index":2},"to":{"offset":0,"side":"In","index":1}},
  {"from":{"side":"Out","index":1},"to":{"offset":0,"side":"Out","index":2}},
  {"from":{"side":"Out","index":2},"to":{"offset":0,"side":"Out","index":1}}]}"#;

#[test]
fn identity_composed_with_identity() {
    let o = diagram(&["compose", "-c", "P", "-"], Some(&format!("{ID2}\n{ID2}")));
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["product"], serde_json::from_str::<Value>(ID2).unwrap());
    assert_eq!(v["steps"][0]["dead_blocks"], 0);
}

#[test]
fn cup_cap_squared_closes_one_circle() {
    let o = diagram(&["compose", "-c", "aTLe", "-"], Some(&format!("[{CUP_CAP}, {CUP_CAP}]")));
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["steps"][0]["b0"], 1);
    assert_eq!(v["steps"][0]["bw"], 0);
}

#[test]
fn error_classes_have_distinct_exit_codes() {
    let shape = diagram(&["compose", "-c", "P", "-"], Some(&format!("{ID1} {ID2}")));
    assert_eq!(shape.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&shape.stderr).contains("shape mismatch"));
    let parse = diagram(&["compose", "-c", "P", "-"], Some("{\"m\": 1"));
    assert_eq!(parse.status.code(), Some(2));
    let repeated = r#"{"m":2,"n":2,"blocks":[[{"side":"In","index":1},{"side":"In","index":1}]]}"#;
    let invalid = diagram(&["compose", "-c", "P", "-"], Some(repeated));
    assert_eq!(invalid.status.code(), Some(3));
    let unknown = diagram(&["check", "x=y", "Nope"], None);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn check_verdicts() {
    let o = diagram(&["check", "xy=yx", "A21", "--search"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("Fails: x = "), "{}", stdout(&o));

    let o = diagram(&["check", "swap-outer", "M", "--criterion"], None);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "Holds (criterion)"));

    let o = diagram(&["check", "zimin3-variant", "Cob2-fiber", "--search", "--budget", "2000", "--seed", "5"], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("seed 5\n") && out.contains("Unknown: no witness"), "{out}");

    let o = diagram(&["check", "xy=yx", "Ann3"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn normal_form_of_the_worked_word() {
    let o = diagram(&["normalform", "x^3yxytz^4xyz"], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("extreme representation: x · x^2 · y · xy · t · 1 · z · z^3 · x · 1 · y · 1 · z"), "{out}");
    assert!(out.contains("e: xytzxyz"));
    assert!(out.contains("interior blocks: x^2, xy, 1, z^3, 1, 1"));
    assert!(out.contains("normal form: x^3yxytz^4xyz"));
}

#[test]
fn idempotents_of_p2() {
    let o = diagram(&["idempotents", "2", "P"], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("12 idempotents among 15 partitions of [2]\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.contains("components:")).count(), 12);
}

#[test]
fn suite_json_report() {
    let o = diagram(&["suite", "--json", "--filter", "C11", "--seed", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "report_v1");
    assert_eq!(v["seed"], 3);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 16);
    assert_eq!(entries.iter().filter(|e| e["status"] == "Pass").count(), 1);
    assert!(entries.iter().all(|e| e["status"] != "Fail"));
}
