use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_slice(&run(&all).stdout).expect("valid json")
}

#[test]
fn verify_ladders() {
    let o = run(&["verify", "corpus:cyclic4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["verify", "corpus:cyclic4"]);
    assert_eq!(v["ladder"]["rootoid"], true);
    assert_eq!(v["ladder"]["even"], true);
    assert_eq!(v["ladder"]["complete"], true);

    let v = json(&["verify", "corpus:pentagon"]);
    assert_eq!(v["ladder"]["rootoid"], true);
    assert_eq!(v["ladder"]["complete"], false);
    assert_eq!(v["ladder"]["preprincipal"], false);

    let o = run(&["verify", "corpus:cube-minus-vertex"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("JOP witness"));
}

#[test]
fn present_dihedral() {
    let v = json(&["present", "corpus:dihedral8"]);
    assert_eq!(v["braid_relations"].as_array().unwrap().len(), 6);
    let pi = v["pi"].as_array().unwrap();
    let r = pi.iter().find(|p| p["r"] == "r").unwrap();
    assert_eq!(
        r["map"],
        serde_json::json!([["r", "r"], ["s", "t"], ["t", "s"]])
    );
    assert!(stdout(&run(&["present", "corpus:dihedral8"])).contains("graph edges: none"));
}

#[test]
fn normalizer_and_stable() {
    let v = json(&["normalizer", "corpus:D4", "--seed", "1W:{s}"]);
    assert_eq!(v["stats"]["objects"], 4);
    assert_eq!(v["stats"]["atoms"], serde_json::json!([3, 3, 3, 3]));
    assert_eq!(
        v["stats"]["longest_length"],
        serde_json::json!([7, 7, 7, 7])
    );
    let v = json(&["stable", "corpus:A3"]);
    assert_eq!(v["count"], 26);
}

#[test]
fn cubes_aop_and_completion() {
    assert_eq!(stdout(&run(&["maxcube", "corpus:A3"])).trim(), "3");
    assert_eq!(stdout(&run(&["maxcube", "corpus:tree"])).trim(), "1");
    assert_eq!(
        run(&["aop", "corpus:A3", "--fold", "2,1,0"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["aop", "corpus:I2(3)", "--gens", "rs,sr"])
            .status
            .code(),
        Some(1)
    );
    let v = json(&["complete", "corpus:I2(4)"]);
    assert_eq!(v["ortholattice"], 16);
    let dot = stdout(&run(&["--dot", "hasse", "corpus:cyclic4"]));
    assert!(dot.starts_with("digraph"));
    let v = json(&["functor", "corpus:A2", "--datum", "arrow", "--at", "s"]);
    assert_eq!(v["report"]["rootoid"], true);
}

#[test]
fn errors_and_gates() {
    assert_eq!(run(&["verify", "corpus:nothing"]).status.code(), Some(2));
    let o = run(&["verify", "{\"kind\":\n 3}"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        run(&["--gate-morphisms", "10", "verify", "corpus:A3"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&[
            "--gate-component",
            "5",
            "normalizer",
            "corpus:A3",
            "--seed",
            "1W:{s}"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        run(&["--gate-ideals", "2", "complete", "corpus:A3"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn json_input_and_determinism() {
    let input = r#"{"kind":"graph","vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["d","a"]]}"#;
    let a = run(&["--json", "verify", input]);
    let b = run(&["--json", "verify", input]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dump = json(&["dump", "corpus:A1"]);
    assert_eq!(dump["morphisms"].as_array().unwrap().len(), 2);
    assert_eq!(
        json(&["squares", "corpus:A1"])["count"],
        json(&["squares", "corpus:A1"])["count"]
    );
}
