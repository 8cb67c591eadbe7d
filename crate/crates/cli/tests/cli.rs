use std::path::PathBuf;
use std::process::{Command, Output};

use mackey_core::mackey::{burnside, catalog, from_json, to_json, to_json_string, Ambient, CatalogName, MackeyFunctor};
use serde_json::Value;
use tempfile::TempDir;

fn mackey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mackey")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, m: &MackeyFunctor) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, to_json_string(m)).unwrap();
    path
}

fn named(group: &str, name: CatalogName) -> MackeyFunctor {
    catalog(&name, &Ambient::new(&group.parse().unwrap()).unwrap()).unwrap()
}

const WORKED: [&str; 6] = ["homology", "--group", "pq-nonab:3,7,2", "--rep", "-4 +7*V1 -2*W1", "--format"];

#[test]
fn worked_example_as_text() {
    let o = mackey(&[&WORKED[..], &["text"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(lines[0], ["degree", "-8", "-6", "-4", "-2", "-1", "1", "3", "5", "7"]);
    assert_eq!(
        lines[1],
        ["M", "Z/p^", "Z/p^", "Z/p^", "Z^{1,q}", "Z/q^(2)", "Z/q^(4)", "Z/q^(1)", "Z/q^(2)", "Z/q^(4)"]
    );
    assert_eq!(lines[2], ["M(G/G)", "Z/3", "Z/3", "Z/3", "Z", "0", "0", "Z/7", "0", "0"]);
}

#[test]
fn renderings_agree_and_functors_roundtrip() {
    let json: Value = serde_json::from_str(&stdout(&mackey(&[&WORKED[..], &["json"]].concat()))).unwrap();
    let rows = json["degrees"].as_array().unwrap();
    let degrees: Vec<i64> = rows.iter().map(|r| r["degree"].as_i64().unwrap()).collect();
    assert_eq!(degrees, [-8, -6, -4, -2, -1, 1, 3, 5, 7]);
    for r in rows {
        let doc = &r["functor"];
        let m = from_json(doc).unwrap();
        assert_eq!(&to_json(&m), doc);
    }
    let latex = stdout(&mackey(&[&WORKED[..], &["latex"]].concat()));
    let header = latex.lines().find(|l| l.starts_with("$n$")).unwrap();
    let cells: Vec<String> = degrees.iter().map(|d| format!("${d}$")).collect();
    assert_eq!(header, format!("$n$ & {} \\\\", cells.join(" & ")));
    assert_eq!(latex.matches(r"\widehat{\mathbb{Z}/q}").count(), 5);
}

#[test]
fn small_tables() {
    let o = mackey(&["homology", "--group", "pq-nonab:3,7,2", "--rep", "0"]);
    let out = stdout(&o);
    assert_eq!(out.lines().nth(1).unwrap().split_whitespace().collect::<Vec<_>>(), ["degree", "0"]);
    assert_eq!(out.lines().nth(2).unwrap().split_whitespace().collect::<Vec<_>>(), ["M", "Z"]);

    let o = mackey(&["homology", "--group", "pq-ab:3,5", "--rep", "+1*V1", "--mode", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z/p^ + Z/q^"));
    assert!(stderr(&o).contains("agree"));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = mackey(&["homology", "--group", "pq-nonab:3,7,2", "--rep", "1 +2*X1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    let caret = err.lines().last().unwrap();
    assert_eq!(caret.find('^'), Some(2 + "1 +2*X1".find('X').unwrap()), "{err}");

    let o = mackey(&["homology", "--group", "pq-nonab:3,7,5", "--rep", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = mackey(&["homology", "--group", "pq-nonab:3,7,2", "--rep", "-2*W1", "--mode", "brute"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("|s| <= 1"));

    assert_eq!(mackey(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_command() {
    let dir = TempDir::new().unwrap();
    let z = write(&dir, "z.json", &named("pq-nonab:3,7,2", CatalogName::ConstZ { a: 1, b: 1 }));
    let o = mackey(&["check", z.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let amb = Ambient::new(&"pq-nonab:3,7,2".parse().unwrap()).unwrap();
    let a = write(&dir, "a.json", &burnside(&amb).unwrap());
    let o = mackey(&["check", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("Mackey axioms: pass") && out.contains("cohomological: FAIL"), "{out}");

    let truncated = write(&dir, "t.json", &named("pq-nonab:3,7,2", CatalogName::HatZp).truncate());
    let o = mackey(&["check", truncated.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mackey recover"));

    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"{"group": "pq-nonab:3,7,2", "levels": {"H": {"free_rank": 1, "torsion": []}}}"#,
    )
    .unwrap();
    let o = mackey(&["check", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("$.levels.H"));
}

#[test]
fn recover_command() {
    let dir = TempDir::new().unwrap();
    for (group, name, top) in [
        ("pq-nonab:3,7,2", CatalogName::ConstZ { a: 1, b: 1 }, "top level Z:"),
        ("pq-nonab:3,7,2", CatalogName::HatZq { e: 2 }, "top level 0:"),
        ("a4", CatalogName::ConstZ { a: 1, b: 1 }, "top level Z:"),
    ] {
        let full = named(group, name);
        let file = write(&dir, "in.json", &full.truncate());
        let out = dir.path().join("out.json");
        let o = mackey(&["recover", file.to_str().unwrap(), "--output", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).starts_with(top), "{}", stdout(&o));
        let recovered = mackey_core::mackey::from_json_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert!(mackey_core::mackey::is_isomorphic(&recovered, &full).unwrap());
    }
}

#[test]
fn actions_oracle() {
    let o = mackey(&["oracle", "--suite", "actions"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("pass")).count(), 3);
}
