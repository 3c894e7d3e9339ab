use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pgdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgdeg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pgdeg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn degree_of_a_corpus_example() {
    let out = pgdeg(&["degree", "corpus:na"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["degree"], 3);
    assert_eq!(r["agree"], true);
}

#[test]
fn f4_row_of_the_degree_table() {
    let out = pgdeg(&["roots", "F4", "--table", "degrees"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let row = &r["rows"][0];
    assert_eq!((row["value"].as_u64(), row["exact"].as_bool()), (Some(6), Some(true)));
    let text = pgdeg(&["--format", "text", "roots", "F4", "--table", "degrees"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains('6'));
}

#[test]
fn segal_verdicts() {
    let pass = pgdeg(&["segal", "corpus:bcom:S3", "--variant", "lower-odd", "--k", "2", "--nmax", "5"]);
    assert!(pass.status.success());
    assert_eq!(json(&pass)["verdict"], "pass");
    let fail = pgdeg(&["segal", "corpus:na", "--k", "2", "--nmax", "5"]);
    assert!(fail.status.success());
    assert_eq!(json(&fail)["verdict"], "fail");
}

#[test]
fn emitted_documents_validate_and_keep_their_degree() {
    for (spec, deg) in [("bcom:S3", 2), ("skeleton:1,3", 2), ("lsg:2", 0)] {
        let file = scratch(&format!("{}.json", spec.replace([':', ','], "_")));
        let path = file.to_str().unwrap();
        assert!(pgdeg(&["corpus", spec, "--emit", path]).status.success(), "{spec}");
        assert!(pgdeg(&["validate", path]).status.success(), "{spec}");
        let from_file = json(&pgdeg(&["degree", path]))["degree"].as_u64().unwrap();
        let from_corpus = json(&pgdeg(&["degree", spec]))["degree"].as_u64().unwrap();
        assert_eq!(from_file, from_corpus, "{spec}");
        if deg > 0 {
            assert_eq!(from_file, deg, "{spec}");
        }
    }
}

#[test]
fn exit_codes() {
    // unknown corpus entry and unsupported emission are input errors
    assert_eq!(pgdeg(&["degree", "corpus:nothing"]).status.code(), Some(2));
    assert_eq!(pgdeg(&["corpus", "sphere:1", "--emit", "-"]).status.code(), Some(2));
    assert_eq!(pgdeg(&["degree", "corpus:na", "--method", "guess"]).status.code(), Some(2));

    let broken = scratch("broken.json");
    // [f|f|g] is listed but its face [f|f] is not composable
    std::fs::write(
        &broken,
        r#"{"kind":"partial-groupoid","objects":["x"],
            "edges":[{"id":"e","src":"x","tgt":"x","inv":"e"},{"id":"f","src":"x","tgt":"x","inv":"g"},{"id":"g","src":"x","tgt":"x","inv":"f"}],
            "identities":{"x":"e"},"compositions":[["f","g","e"]],"simplices":{"3":[["f","f","g"]]}}"#,
    ).unwrap();
    let out = pgdeg(&["validate", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);

    let out = pgdeg(&["sphere", "2", "--witness"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["replayed"], true);
}

#[test]
fn helly_of_a_closure_space() {
    let file = scratch("triangle.json");
    std::fs::write(&file, r#"{"kind":"closure-space","ground":["x","y","z"],"generators":[["x","y"],["y","z"],["x","z"],["x"],["y"],["z"],[]]}"#).unwrap();
    let out = pgdeg(&["helly", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["helly_number"], 3);
}
