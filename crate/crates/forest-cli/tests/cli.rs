//! End-to-end tests driving the compiled binary: every subcommand, the
//! envelope contract, the exit-status contract (0 success, 1 failed check,
//! 2 unusable input), and the documented examples.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

/// A bipartite graph on 8 vertices with 13 edges and girth 4 (complete
/// bipartite minus a three-edge matching). One edge over the planar
/// girth-4 budget 2n - 4, so only the arithmetic of `bound` applies.
const SPARSE8: &str = "p forest 8 13\n\
e 1 6\ne 1 7\ne 1 8\ne 2 5\ne 2 7\ne 2 8\ne 3 5\ne 3 6\ne 3 8\n\
e 4 5\ne 4 6\ne 4 7\ne 4 8\n";

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_forest"));
    cmd.args(args)
        .stdin(if stdin.is_some() {
            Stdio::piped()
        } else {
            Stdio::null()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn the forest binary");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .expect("stdin is piped")
            .write_all(text.as_bytes())
            .expect("write stdin");
    }
    child.wait_with_output().expect("wait for the forest binary")
}

/// Run, require success, parse the envelope, and check its fixed fields.
fn envelope(args: &[&str], stdin: Option<&str>) -> Value {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "`forest {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("standard output is JSON");
    assert_eq!(v["command"], args[0]);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    v
}

/// `gen` without -o prints the raw graph file.
fn gen_text(family: &str) -> String {
    let out = run(&["gen", family], None);
    assert!(out.status.success(), "gen {family} failed");
    String::from_utf8(out.stdout).expect("graph file is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn gen_writes_a_file_and_info_reads_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.txt");
    let path = path.to_str().unwrap();

    let v = envelope(&["gen", "cube", "-o", path], None);
    assert_eq!(v["input_digest"], Value::Null);
    assert_eq!(v["result"]["n"], 8);
    assert_eq!(v["result"]["m"], 12);
    assert_eq!(v["result"]["embedded"], true);
    assert_eq!(v["result"]["output"], path);

    let v = envelope(&["info", path], None);
    let digest = v["input_digest"].as_str().expect("info digests its input");
    assert_eq!(digest.len(), 64);
    assert!(digest.chars().all(|c| c.is_ascii_hexdigit()));
    let r = &v["result"];
    assert_eq!(r["n"], 8);
    assert_eq!(r["m"], 12);
    assert_eq!(r["embedded"], true);
    assert_eq!(r["connected"], true);
    assert_eq!(r["components"], 1);
    assert_eq!(r["girth"], 4);
    assert_eq!(r["max_degree"], 3);
    assert_eq!(r["bridges"], 0);
    assert_eq!(r["degree_counts"]["3"], 8);
    assert_eq!(r["face_counts"]["4"], 6);
    assert_eq!(r["classes"], serde_json::json!(["girth4"]));
}

#[test]
fn gen_pipes_into_exact() {
    let text = gen_text("cube");
    let v = envelope(&["exact"], Some(&text));
    let r = &v["result"];
    assert_eq!(r["forest_number"], 5);
    assert_eq!(r["decycling_number"], 3);
    assert_eq!(r["optimal"], true);
    assert_eq!(r["witness"].as_array().unwrap().len(), 5);

    let dash = envelope(&["exact", "-"], Some(&text));
    assert_eq!(dash["result"]["forest_number"], 5);
    assert_eq!(dash["input_digest"], v["input_digest"]);
}

#[test]
fn exact_solves_the_dodecahedron() {
    let text = gen_text("dodecahedron");
    let v = envelope(&["exact", "--jobs", "2"], Some(&text));
    let r = &v["result"];
    assert_eq!(r["forest_number"], 14);
    assert_eq!(r["decycling_number"], 6);
    assert_eq!(r["optimal"], true);

    let v = envelope(&["exact", "--node-limit", "1"], Some(&text));
    assert_eq!(v["result"]["optimal"], false);
}

#[test]
fn bound_best_reports_exact_fractions() {
    let v = envelope(&["bound", "--best", "girth4"], Some(SPARSE8));
    let r = &v["result"];
    assert_eq!(r["mode"], "best");
    assert_eq!(r["class"], "girth4");
    assert_eq!(r["n"], 8);
    assert_eq!(r["m"], 13);
    assert_eq!(r["value"], "213/44");
    assert_eq!(r["ceil"], 5);
    assert_eq!(r["vertex"]["a"], "19/22");
    assert_eq!(r["vertex"]["b"], "7/44");
}

#[test]
fn bound_defaults_to_the_strongest_eligible_class() {
    let cube = gen_text("cube");
    let v = envelope(&["bound"], Some(&cube));
    assert_eq!(v["result"]["class"], "girth4");
    assert_eq!(v["result"]["value"], "5");

    let dodec = gen_text("dodecahedron");
    let v = envelope(&["bound"], Some(&dodec));
    assert_eq!(v["result"]["class"], "girth5");
    assert_eq!(v["result"]["value"], "310/23");
    assert_eq!(v["result"]["ceil"], 14);
}

#[test]
fn bound_formula_evaluates_the_catalog() {
    let cube = gen_text("cube");

    let v = envelope(&["bound", "--formula", "alon_nm"], Some(&cube));
    let r = &v["result"];
    assert_eq!(r["mode"], "formula");
    assert_eq!(r["id"], "alon_nm");
    assert_eq!(r["value"], "5");
    assert_eq!(r["ceil"], 5);
    assert_eq!(r["refuted"], false);
    assert_eq!(r["note"], Value::Null);

    let v = envelope(&["bound", "--formula", "kowalik_nm"], Some(&cube));
    let r = &v["result"];
    assert_eq!(r["value"], "5");
    assert_eq!(r["refuted"], true);
    assert!(r["note"].as_str().unwrap().contains("refute-kowalik"));
}

#[test]
fn bound_rejects_class_below_girth() {
    let triangle = gen_text("hosono:2");
    let out = run(&["bound", "--best", "girth4"], Some(&triangle));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("girth"));

    let out = run(&["bound"], Some(&triangle));
    assert_eq!(out.status.code(), Some(2));

    let cube = gen_text("cube");
    let out = run(&["bound", "--formula", "bmain"], Some(&cube));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("girth at least 5"));
}

#[test]
fn reduce_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("dodecahedron.txt");
    let graph = graph.to_str().unwrap();
    let cert = dir.path().join("cert.json");
    let cert = cert.to_str().unwrap();
    envelope(&["gen", "dodecahedron", "-o", graph], None);

    let v = envelope(&["reduce", graph, "--class", "girth5", "-o", cert], None);
    let r = &v["result"];
    assert_eq!(r["class"], "girth5");
    assert_eq!(r["forest_size"], 14);
    assert_eq!(r["best_bound"], "310/23");
    assert_eq!(r["bound_ceil"], 14);
    assert_eq!(r["meets_bound"], true);
    assert_eq!(r["certified"], true);
    assert_eq!(r["exact"], true);
    assert_eq!(r["certificate"], cert);
    assert_eq!(r["forest"].as_array().unwrap().len(), 14);

    let v = envelope(&["verify", graph, cert], None);
    let r = &v["result"];
    assert_eq!(r["valid"], true);
    assert_eq!(r["error"], Value::Null);
    assert_eq!(r["forest_size"], 14);
    assert_eq!(r["best_bound"], "310/23");
    assert_eq!(r["meets_bound"], true);
    assert_eq!(r["certified"], true);
    assert_eq!(r["exact"], true);
}

#[test]
fn reduce_applies_rules_past_the_exact_threshold() {
    let text = gen_text("grid:6x6");
    let v = envelope(&["reduce", "--class", "girth4"], Some(&text));
    let r = &v["result"];
    assert_eq!(r["best_bound"], "237/11");
    assert_eq!(r["bound_ceil"], 22);
    assert_eq!(r["meets_bound"], true);
    assert_eq!(r["certified"], true);
    assert_eq!(r["certificate"], Value::Null);
    assert!(r["forest_size"].as_u64().unwrap() >= 22);
    let rules = r["rules"].as_object().unwrap();
    let applications: u64 = rules.values().map(|v| v.as_u64().unwrap()).sum();
    assert!(applications > 0, "a 36-vertex grid must reduce, not solve");
}

#[test]
fn verify_flags_a_tampered_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("dodecahedron.txt");
    let graph = graph.to_str().unwrap();
    let cert = dir.path().join("cert.json");
    let cert = cert.to_str().unwrap();
    envelope(&["gen", "dodecahedron", "-o", graph], None);
    envelope(&["reduce", graph, "--class", "girth5", "-o", cert], None);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(cert).unwrap()).unwrap();
    doc["forest"].as_array_mut().unwrap().pop();
    std::fs::write(cert, serde_json::to_string(&doc).unwrap()).unwrap();

    let out = run(&["verify", graph, cert], None);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["valid"], false);
    assert!(!v["result"]["error"].as_str().unwrap().is_empty());
    assert_eq!(v["result"]["forest_size"], Value::Null);

    std::fs::write(cert, "not json").unwrap();
    let out = run(&["verify", graph, cert], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_rejects_class_mismatch() {
    let cube = gen_text("cube");
    let out = run(&["reduce", "--class", "girth5"], Some(&cube));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("girth"));
}

#[test]
fn audit_counts_cube_and_dodecahedron_violations() {
    let cube = gen_text("cube");
    let v = envelope(&["audit", "--mode", "girth4"], Some(&cube));
    let r = &v["result"];
    assert_eq!(r["euler_sum"], -12);
    assert_eq!(r["violation_count"], 6);
    assert_eq!(r["charge_margins"], serde_json::json!([-24, -12]));
    for violation in r["violations"].as_array().unwrap() {
        assert_eq!(violation["len"], 4);
        assert_eq!(violation["high_degree"], 0);
        for vertex in violation["vertices"].as_array().unwrap() {
            let id = vertex.as_u64().unwrap();
            assert!((1..=8).contains(&id), "file ids are 1-based");
        }
    }

    let dodec = gen_text("dodecahedron");
    let v = envelope(&["audit", "--mode", "girth5"], Some(&dodec));
    assert_eq!(v["result"]["euler_sum"], -12);
    assert_eq!(v["result"]["violation_count"], 12);
}

#[test]
fn refute_kowalik_reports_the_gap() {
    let v = envelope(&["refute-kowalik", "--k", "2"], None);
    assert_eq!(v["input_digest"], Value::Null);
    let r = &v["result"];
    assert_eq!(r["k"], 2);
    assert_eq!(r["claimed"], "163/16");
    assert_eq!(r["actual"], 10);
    assert_eq!(r["margin"], "3/16");
    assert_eq!(r["violated"], true);
    assert_eq!(r["per_cube"], 5);

    let v = envelope(&["refute-kowalik", "--k", "1"], None);
    let r = &v["result"];
    assert_eq!(r["claimed"], "5");
    assert_eq!(r["margin"], "0");
    assert_eq!(r["violated"], false);

    let out = run(&["refute-kowalik", "--k", "0"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plot_polygon_writes_labeled_svg() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = dir.path().join("girth4.svg");
    let p4 = p4.to_str().unwrap();
    let p5 = dir.path().join("girth5.svg");
    let p5 = p5.to_str().unwrap();

    let v = envelope(&["plot-polygon", "--class", "girth4", "-o", p4], None);
    let r = &v["result"];
    assert_eq!(r["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(r["constraints"].as_array().unwrap().len(), 6);
    let labels: Vec<&str> = r["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|vx| vx["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["(0, 0)", "(1/8, 3/4)", "(7/44, 38/44)", "(1/4, 1)"]);
    let svg = std::fs::read_to_string(p4).unwrap();
    for label in labels {
        assert_eq!(svg.matches(label).count(), 1);
    }
    assert_eq!(svg.matches("<line class=\"constraint\"").count(), 6);

    let v = envelope(&["plot-polygon", "--class", "girth5", "-o", p5], None);
    let r = &v["result"];
    assert_eq!(r["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(r["constraints"].as_array().unwrap().len(), 5);
    let svg = std::fs::read_to_string(p5).unwrap();
    assert!(svg.contains("(3/16, 15/16)"));
    assert!(svg.contains("(5/23, 1)"));
    assert_eq!(svg.matches("<line class=\"constraint\"").count(), 5);
}

#[test]
fn malformed_files_exit_2_with_line_numbers() {
    let out = run(&["info"], Some("p forest 3 1\ne 1 5\n"));
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.starts_with("error:"), "stderr was: {err}");
    assert!(err.contains("line 2"), "stderr was: {err}");

    let out = run(&["gen", "moebius:3"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("moebius:3"));

    let out = run(&["info", "/nonexistent/graph.txt"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generated_files_are_canonical() {
    let first = gen_text("grid:3x3");
    let second = gen_text("grid:3x3");
    assert_eq!(first, second);
    assert!(first.starts_with("c family: grid:3x3\n"));
    assert!(first.contains("p forest 9 12\n"));

    for family in [
        "cube",
        "cubes:2",
        "cube-minus-edge:2",
        "cubes-linked:2",
        "dodecahedron",
        "dodecahedra:2",
        "hosono:3",
        "girth6",
        "girth7",
        "grid:4x5",
        "cycle:7",
        "path:5",
    ] {
        let text = gen_text(family);
        let v = envelope(&["info"], Some(&text));
        assert_eq!(v["result"]["embedded"], true, "family {family}");
    }
}
