use std::process::{Command, Output};

fn bicyclic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicyclic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn arithmetic() {
    let o = bicyclic(&["mul", "(2,1)", "(1,1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1,2)\n");
    assert_eq!(stdout(&bicyclic(&["star", "(2,3)"])), "(5,-3)\n");
    assert_eq!(stdout(&bicyclic(&["word", "GG*G"])), "(0,1)\n");
    assert_eq!(stdout(&bicyclic(&["word", "G*G"])), "(0,0)\n");
    assert_eq!(stdout(&bicyclic(&["word", "GG*"])), "(1,0)\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bicyclic(&["mul", "(1,-3)", "(0,0)"]).status.code(), Some(2));
    assert_eq!(
        bicyclic(&[
            "grid",
            "--rule",
            "D:a=7,c=3",
            "--rows",
            "0..1",
            "--cols",
            "0..1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        bicyclic(&["probe", "--family", "d:a=8,c=4"]).status.code(),
        Some(2)
    );
    assert_eq!(bicyclic(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bicyclic(&["word", ""]).status.code(), Some(2));
}

#[test]
fn classify_statuses_and_formats() {
    let o = bicyclic(&["classify", "--set", "(1,2)"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("verdict unavoidable"));
    assert!(text.contains("cycle (0,1);(1,1);(2,1)"));

    let o = bicyclic(&["classify", "--set", "(8,-8);(3,-3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "set {(3,-3);(8,-8)}\nverdict avoidable\nfamily d:a=8,c=3\ncertificate D:a=8,c=3\n"
    );

    let o = bicyclic(&["classify", "--set", "(8,-8);(3,-3)", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "avoidable");
    assert_eq!(v["families"][0]["family"], "d:a=8,c=3");
    assert_eq!(v["certificate"], "D:a=8,c=3");

    let o = bicyclic(&["classify", "--set", "(0,0);(1,1);(2,3)", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"]["provenance"], "identity-two-rows");
    assert_eq!(v["witness"]["cycle"].as_array().unwrap().len(), 5);
}

#[test]
fn grids_match_printed_figures() {
    let o = bicyclic(&[
        "grid", "--rule", "Z:d=5", "--rows", "0..7", "--cols", "-7..13",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let fig = bicyclic::sweep::FIGURES
        .iter()
        .find(|f| f.rule == "Z:d=5")
        .unwrap();
    let expected: String = fig.lines.iter().map(|l| format!("{l}\n")).collect();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn partition_check() {
    let ok = bicyclic(&[
        "partition",
        "--rule",
        "D:a=8,c=3",
        "--set",
        "(8,-8);(3,-3)",
        "--window",
        "40",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = bicyclic(&[
        "partition",
        "--rule",
        "parity",
        "--set",
        "(1,2)",
        "--window",
        "3",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("(0,0)·(1,2) = (1,2)"));
    let fam = bicyclic(&[
        "partition",
        "--rule",
        "star(D:a=8,c=3)",
        "--family",
        "f:b=8,d=3",
        "--window",
        "30",
    ]);
    assert_eq!(fam.status.code(), Some(0));
}

#[test]
fn graph_export_and_certificate_check() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let cert = dir.path().join("g.cert");
    let (dot_s, cert_s) = (dot.to_str().unwrap(), cert.to_str().unwrap());

    let o = bicyclic(&[
        "graph",
        "--set",
        "(8,-8);(3,-3)",
        "--window",
        "6",
        "--dot",
        dot_s,
        "--color",
        "--certificate",
        cert_s,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bipartite"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph associated {"));
    assert!(text.contains("color="));

    let check = bicyclic(&[
        "check",
        "--certificate",
        cert_s,
        "--set",
        "(8,-8);(3,-3)",
        "--window",
        "6",
    ]);
    assert_eq!(check.status.code(), Some(0));
    // the same coloring does not fit a different target's graph
    let check = bicyclic(&[
        "check",
        "--certificate",
        cert_s,
        "--set",
        "(2,-2);(4,-4)",
        "--window",
        "6",
    ]);
    assert_eq!(check.status.code(), Some(1));

    let o = bicyclic(&[
        "graph",
        "--set",
        "(2,-2);(4,-4)",
        "--window",
        "6",
        "--dot",
        dot_s,
        "--certificate",
        cert_s,
    ]);
    assert!(stdout(&o).contains("odd cycle"));
    let check = bicyclic(&[
        "check",
        "--certificate",
        cert_s,
        "--set",
        "(2,-2);(4,-4)",
        "--window",
        "6",
    ]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn coloring_statuses() {
    let set = "(2,-2);(4,-4)";
    assert_eq!(
        bicyclic(&["ncolor", "--set", set, "--window", "6", "--k", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        bicyclic(&["ncolor", "--set", set, "--window", "6", "--k", "3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        bicyclic(&["ncolor", "--set", set, "--window", "6", "--k", "2", "--budget", "1"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn verify_and_probe() {
    let o = bicyclic(&["verify", "--suite", "figures"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("figures: ok"));
    let o = bicyclic(&["verify", "--suite", "theorem", "--max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bicyclic(&[
        "--sequential",
        "verify",
        "--suite",
        "witnesses",
        "--max",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = bicyclic(&["probe", "--family", "d:a=8,c=3", "--window", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("summary 167 obstructed, 0 unobstructed\n"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "theorem", "--max", "4"];
    assert_eq!(stdout(&bicyclic(&args)), stdout(&bicyclic(&args)));
    let args = ["classify", "--set", "(0,2);(0,4)", "--json"];
    assert_eq!(stdout(&bicyclic(&args)), stdout(&bicyclic(&args)));
}
