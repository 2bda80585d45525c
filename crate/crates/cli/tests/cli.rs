use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syncgames"))
        .args(args)
        .env_remove("SYNCGAMES_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(out)).unwrap()
}

fn write(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = args.to_vec();
    full.extend(["-o", path.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn identity_is_everything() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", &["construct", "function", "--map", "0:0,1:1"]);
    let report = json(&run(&["classify", s(&id)]));
    for flag in ["synchronous", "nonsignaling", "symmetric", "deterministic", "classical"] {
        assert_eq!(report[flag], true, "{flag}");
    }
    for cat in ["S", "NS", "Q", "HV"] {
        for prop in ["section", "retraction", "monomorphism", "epimorphism", "bimorphism", "isomorphism"] {
            assert_eq!(report["morphology"][cat][prop], true, "{cat} {prop}");
        }
    }
    let table = stdout(&run(&["classify", s(&id), "--table"]));
    assert!(table.lines().any(|l| l.starts_with("isomorphism") && l.matches("true").count() == 4));
}

#[test]
fn asymmetric_nonsignaling_sits_outside_q_and_hv() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "p.json",
        &["construct", "lemma1", "--set", "0,1", "--u", "1/2,0;0,1/2", "--v", "0,1/2;1/2,0"],
    );
    let witnesses = dir.path().join("w");
    let report = json(&run(&["classify", s(&p), "--witness-dir", s(&witnesses)]));
    assert_eq!(report["nonsignaling"], true);
    assert_eq!(report["symmetric"], false);
    assert_eq!(report["classical"], false);
    assert!(report["morphology"]["Q"].is_null());
    assert!(report["morphology"]["HV"].is_null());
    assert_eq!(report["morphology"]["NS"]["monomorphism"], false);
    assert!(witnesses.join("NS-mono.json").exists());
    assert_eq!(report["witnesses"]["NS"]["mono"], s(&witnesses.join("NS-mono.json")));
}

#[test]
fn compositions() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", &["construct", "function", "--map", "0:0,1:1"]);
    let not = write(&dir, "not.json", &["construct", "function", "--map", "0:1,1:0"]);
    let p = write(&dir, "p.json", &["construct", "random", "--kind", "classical", "--input-size", "2", "--output-size", "2"]);
    let composed = json(&run(&["compose", s(&id), s(&p)]));
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(composed, original);
    let twice = json(&run(&["compose", s(&not), s(&not)]));
    assert_eq!(twice, serde_json::from_str::<Value>(&std::fs::read_to_string(&id).unwrap()).unwrap());

    let three = write(&dir, "three.json", &["construct", "function", "--map", "0:0,1:1,2:2"]);
    let out = run(&["compose", s(&three), s(&p)]);
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "SetMismatch");
}

#[test]
fn mono_witness_refutes_constant_function() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", &["construct", "function", "--map", "0:0,1:0", "--output", "0,1"]);
    let w = json(&run(&["witness", "mono", "--category", "HV", s(&c)]));
    assert_eq!(w["side"], "mono");
    let plus = dir.path().join("plus.json");
    let minus = dir.path().join("minus.json");
    std::fs::write(&plus, w["q_plus"].to_string()).unwrap();
    std::fs::write(&minus, w["q_minus"].to_string()).unwrap();
    assert_ne!(w["q_plus"], w["q_minus"]);
    assert_eq!(json(&run(&["compose", s(&c), s(&plus)])), json(&run(&["compose", s(&c), s(&minus)])));

    let id = write(&dir, "id.json", &["construct", "function", "--map", "0:0,1:1"]);
    let out = run(&["witness", "epi", "--category", "S", s(&id)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no witness"));
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    let out = run(&["classify", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(serde_json::from_slice::<Value>(&out.stderr).unwrap()["error"], "Parse");

    let args = ["construct", "random", "--kind", "synchronous", "--input-size", "7", "--output-size", "2"];
    assert_eq!(run(&args).status.code(), Some(3));
    let mut raised = vec!["--max-size", "7"];
    raised.extend(args);
    let out = run(&raised);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));

    assert_eq!(run(&["witness", "mono", "--category", "XX", s(&bad)]).status.code(), Some(2));
}

#[test]
fn boole_commands() {
    assert_eq!(stdout(&run(&["boole", "triple-inequalities"])).lines().count(), 16);
    let bounds = json(&run(&["boole", "pair-bounds", "1/2", "2/3"]));
    assert_eq!(bounds["lower"], "1/6");
    assert_eq!(bounds["upper"], "1/2");
    let triple = json(&run(&["boole", "triple-bounds", "--w", "1/2,1/4,1/4;1/4,1/2,1/4;1/4,1/4,1/2"]));
    assert_eq!(triple["feasible"], true);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.json");
    let rec = run(&["boole", "reconstruct", "--w", "1/2,1/4;1/4,1/2", "-o", s(&out)]);
    assert_eq!(rec.status.code(), Some(0));
    let measure: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let atoms = dir.path().join("atoms.json");
    std::fs::write(&atoms, measure["atoms"].to_string()).unwrap();
    let w = json(&run(&["boole", "transform", "--direction", "p2w", s(&atoms)]));
    let back = dir.path().join("w.json");
    std::fs::write(&back, w.to_string()).unwrap();
    assert_eq!(json(&run(&["boole", "transform", "--direction", "w2p", s(&back)])), measure["atoms"]);
}
