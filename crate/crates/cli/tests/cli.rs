use std::path::PathBuf;
use std::process::{Command, Output};

use cohom::bench::{builtin_suite, RunReport};
use serde_json::Value;

fn cohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohom")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cohom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn group_examples() {
    for (args, want) in [
        (["--space", "torus", "--coeff", "Z", "--deg", "1"], "Z^2"),
        (["--space", "rp2", "--coeff", "Z/4", "--deg", "2"], "Z/2"),
        (["--space", "s3", "--coeff", "Z", "--deg", "5"], "0"),
        (["--space", "klein", "--coeff", "Z", "--deg", "2"], "Z/2"),
    ] {
        let mut all = vec!["group"];
        all.extend(args);
        let o = cohom(&all);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn ring_claims() {
    for (space, coeff, claim) in [
        ("rp2", "Z/2", "Z/2[x]/(x^3)"),
        ("klein", "Z", "Z[x,y]/(2y,x^2,y^2,xy)"),
        ("cp2", "Z", "Z[x]/(x^3)"),
    ] {
        let o = cohom(&["ring", "--space", space, "--coeff", coeff, "--claim", claim]);
        assert_eq!(code(&o), 0, "{space}");
        assert!(stdout(&o).contains("match: true"), "{}", stdout(&o));
    }
    let o = cohom(&["ring", "--space", "wedge:s2,s1,s1", "--claim", "Z[x,y]/(x^2,y^2) deg x=1, deg y=1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("match: false"));
}

#[test]
fn ring_json_lists_products() {
    let o = cohom(&["--json", "ring", "--space", "torus"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["groups"][1], "Z^2");
    let p = v["products"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["left"] == "g1_1" && p["right"] == "g1_2")
        .unwrap();
    let value = p["value"][0].as_str().unwrap();
    assert!(value == "1" || value == "-1", "{value}");
}

#[test]
fn axioms_and_sequences() {
    let o = cohom(&["axioms", "--space", "s2", "--coeff", "Z/6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("4/4 axioms pass"));

    let o = cohom(&["sequence", "mv", "--space", "torus", "--coeff", "Z"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("exact at 9/9 interior nodes"), "{}", stdout(&o));

    let o = cohom(&["--json", "sequence", "gysin", "--preset", "cp2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["H^4(B)"], "Z");
    assert_eq!(v["exact"], true);

    let o = cohom(&["sequence", "gysin", "--preset", "rpinf", "--maxdeg", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("H^4(B): Z/2"));
}

#[test]
fn circle_sequence_deduces_h1() {
    for coeff in ["Z", "Z/2 + Z/3"] {
        let o = cohom(&[
            "--json", "sequence", "mv", "--space", "s1", "--coeff", coeff, "--reduced", "--forget", "H^1(X)",
        ]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let node = v["nodes"].as_array().unwrap().iter().find(|n| n["label"] == "H^1(X)").unwrap();
        let want: cohom::abgroup::FgAbGroup = coeff.parse().unwrap();
        assert_eq!(node["group"], want.to_string());
        assert_eq!(node["state"], "solved");
    }
}

#[test]
fn bench_report_round_trips_and_keeps_order() {
    let one = Command::new(env!("CARGO_BIN_EXE_cohom"))
        .args(["--json", "bench"])
        .env("COHOM_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_cohom"))
        .args(["--json", "bench"])
        .env("COHOM_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(code(&one), 0);
    assert_eq!(code(&four), 0);
    let a = RunReport::from_json(&stdout(&one)).unwrap();
    let b = RunReport::from_json(&stdout(&four)).unwrap();
    let suite = builtin_suite();
    assert_eq!(a.cases.len(), suite.len());
    for ((x, y), case) in a.cases.iter().zip(&b.cases).zip(&suite) {
        assert_eq!(&x.case, case);
        assert_eq!(&y.case, case);
        assert_eq!(x.status, y.status);
    }
    assert_eq!(RunReport::from_json(&a.to_json()).unwrap(), a);
}

#[test]
fn bench_suite_file_and_mismatch_exit_code() {
    let ok = scratch(
        "ok.json",
        r#"[{"space":"torus","coeff":"Z","degree":2,"expr":"g1(1) cup g2(1)","expected":{"up_to_sign":[1]}},
            {"space":"wedge:s2,s1,s1","coeff":"Z","degree":2,"expr":"g1(1) cup g2(1)","expected":"zero"}]"#,
    );
    let o = cohom(&["bench", "--suite", ok.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let bad = scratch(
        "bad.json",
        r#"[{"space":"s1","coeff":"Z","degree":1,"expr":"g(1) + g(1)","expected":{"coords":[3]}},
            {"space":"s1","coeff":"Z","degree":1,"expr":"g7(1)"}]"#,
    );
    let o = cohom(&["--json", "bench", "--suite", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r = RunReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.failures(), 2);
    let broken = scratch("broken.json", "[{");
    assert_eq!(code(&cohom(&["bench", "--suite", broken.to_str().unwrap()])), 2);
}

#[test]
fn complex_files() {
    let cells = scratch(
        "rp2.json",
        r#"{"cells":[1,1,1],"boundaries":[{"rows":1,"cols":1,"entries":["0"]},{"rows":1,"cols":1,"entries":["2"]}]}"#,
    );
    let o = cohom(&["group", "--complex", cells.to_str().unwrap(), "--deg", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "Z/2");
    let simp = scratch("circle.json", r#"{"vertices":3,"facets":[[0,1],[1,2],[0,2]]}"#);
    let o = cohom(&["ring", "--complex", simp.to_str().unwrap(), "--claim", "Z[x]/(x^2)"]);
    assert_eq!(code(&o), 0);
    let o = cohom(&["ring", "--complex", cells.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["group", "--space", "nowhere", "--deg", "1"],
        vec!["group", "--space", "s1", "--coeff", "Z/", "--deg", "1"],
        vec!["group", "--deg", "1"],
        vec!["ring", "--space", "s1", "--claim", "Z[x]/(y)"],
        vec!["ring", "--space", "s1", "--coeff", "Z + Z/2"],
        vec!["sequence", "mv", "--space", "klein"],
        vec!["frobnicate"],
    ] {
        let o = cohom(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = Command::new(env!("CARGO_BIN_EXE_cohom"))
        .args(["bench"])
        .env("COHOM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
