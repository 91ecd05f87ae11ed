use std::fs;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn wrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wrg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let p = dir.path().join(name);
    fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Value {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<[String; 2]> = edges
        .iter()
        .map(|&(u, v)| [u.to_string(), v.to_string()])
        .collect();
    json!({"vertices": names, "edges": edges})
}

fn worked_scene() -> Value {
    json!({
        "points": [
            {"id": "a", "x": 0, "y": 10},
            {"id": "b", "x": 4, "y": 0},
            {"id": "c", "x": 10, "y": 6},
            {"id": "d", "x": 14, "y": 14}
        ],
        "witnesses": [{"id": "u", "x": 2, "y": 4}, {"id": "v", "x": 12, "y": 11}]
    })
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

#[test]
fn build_algorithms_agree_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", &worked_scene());
    for mode in ["pos", "neg"] {
        let a = wrg(&["build", &s, "--mode", mode, "--algo", "sweep"]);
        let b = wrg(&["build", &s, "--mode", mode, "--algo", "oracle"]);
        assert!(a.status.success() && b.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let g = stdout_json(&wrg(&["build", &s]));
    assert_eq!(
        g["edges"],
        json!([["a", "b"], ["a", "d"], ["b", "d"], ["c", "d"]])
    );
}

#[test]
fn decimal_coordinates_and_output_file() {
    let dir = TempDir::new().unwrap();
    let s = write(
        &dir,
        "s.json",
        &json!({"points": [{"id": "p", "x": 0.5, "y": 0.25}, {"id": "q", "x": 2.75, "y": 3}],
                "witnesses": [{"id": "w", "x": 1.5, "y": 1.125}]}),
    );
    let out = dir.path().join("g.json");
    let o = wrg(&["build", &s, "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let g: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(g["edges"], json!([["p", "q"]]));
}

#[test]
fn invalid_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let o = wrg(&["build", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"].is_string());

    let shared = write(
        &dir,
        "t.json",
        &json!({"points": [{"id": "p", "x": 1, "y": 0}, {"id": "q", "x": 1, "y": 5}], "witnesses": []}),
    );
    assert_eq!(wrg(&["build", &shared]).status.code(), Some(2));
    assert!(wrg(&["build", &shared, "--tie-break"]).status.success());
}

#[test]
fn tree_p7_realizes() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "p7.json",
        &graph(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]),
    );
    let o = wrg(&["realize", "--tree", &g]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["mode"], "pos");
    assert_eq!(r["vertex_map"].as_object().unwrap().len(), 7);

    // the emitted scene builds back to the path
    let scene = write(&dir, "scene.json", &r["scene"]);
    let built = stdout_json(&wrg(&["build", &scene]));
    assert_eq!(built["edges"].as_array().unwrap().len(), 6);

    assert!(wrg(&["recognize", "--tree", &g]).status.success());
    assert!(wrg(&["analyze", "--report", &g]).status.success());
}

#[test]
fn spider_tree_gives_triple_certificate() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "s.json",
        &graph(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]),
    );
    let o = wrg(&["realize", "--tree", &g]);
    assert_eq!(o.status.code(), Some(3));
    let c = stdout_json(&o);
    assert_eq!(c["certificate"], "IndependentTriple");
    assert_eq!(c["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn two_components_reject_c5() {
    let dir = TempDir::new().unwrap();
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (5, 6),
        (6, 7),
        (5, 7),
    ];
    let g = write(&dir, "g.json", &graph(8, &edges));
    let o = wrg(&["realize", "--two-component", &g]);
    assert_eq!(o.status.code(), Some(3));
    let c = stdout_json(&o);
    assert_eq!(c["certificate"], "NotCointerval");

    let ok = write(&dir, "h.json", &graph(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]));
    assert!(wrg(&["realize", "--two-component", &ok]).status.success());
    assert!(wrg(&["recognize", "--two-component", &ok]).status.success());
}

#[test]
fn analyze_fails_on_three_matching() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &graph(6, &[(0, 1), (2, 3), (4, 5)]));
    let o = wrg(&["analyze", "--report", &g]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout_json(&o)["verdict"], "fail");
}

#[test]
fn svg_of_the_worked_scene() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", &worked_scene());
    let o = wrg(&["render", "--scene", &s]);
    assert!(o.status.success());
    let svg = String::from_utf8(o.stdout).unwrap();
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(count(&svg, "vertex"), 4);
    assert_eq!(count(&svg, "witness-pos"), 2);
    assert_eq!(count(&svg, "witness-neg"), 0);
    assert_eq!(count(&svg, "edge"), 4);
    // deterministic
    assert_eq!(svg.as_bytes(), wrg(&["render", "--scene", &s]).stdout);
}

#[test]
fn svg_of_an_empty_scene() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "e.json", &json!({"points": [], "witnesses": []}));
    let out = dir.path().join("e.svg");
    assert!(wrg(&["render", "--scene", &s, "-o", out.to_str().unwrap()])
        .status
        .success());
    let svg = fs::read_to_string(out).unwrap();
    assert!(svg.contains("<svg") && svg.contains("</svg>"));
    assert_eq!(count(&svg, "vertex"), 0);
}

#[test]
fn svg_marks_follow_pm_witness_signs() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "c4.json",
        &graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
    );
    let o = wrg(&["realize", "--pm", &g]);
    assert!(o.status.success());
    let real = stdout_json(&o);
    let ws = real["scene"]["witnesses"].as_array().unwrap();
    let pos = ws.iter().filter(|w| w["sign"] == "+").count();
    let neg = ws.iter().filter(|w| w["sign"] == "-").count();
    assert_eq!((pos, neg), (5, 4));

    let r = write(&dir, "r.json", &real);
    let svg =
        String::from_utf8(wrg(&["render", "--graph", &g, "--realization", &r]).stdout).unwrap();
    assert_eq!(count(&svg, "vertex"), 4);
    assert_eq!(count(&svg, "witness-pos"), pos);
    assert_eq!(count(&svg, "witness-neg"), neg);
    assert_eq!(count(&svg, "edge"), 4);

    let scene = write(&dir, "scene.json", &real["scene"]);
    let built = stdout_json(&wrg(&["build", &scene, "--mode", "pm", "--algo", "oracle"]));
    assert_eq!(built["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn scene_json_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "c4.json",
        &graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
    );
    let real = stdout_json(&wrg(&["realize", "--pm", &g]));
    let text = serde_json::to_string(&real["scene"]).unwrap();
    let scene = wrg_core::io::scene_from_json(&text).unwrap();
    let back: Value = serde_json::from_str(&wrg_core::io::scene_to_json(&scene)).unwrap();
    assert_eq!(back, real["scene"]);
}

#[test]
fn stab_and_mng_commands() {
    let grid = stdout_json(&wrg(&["stab", "--grid", "3"]));
    assert_eq!(grid["lower"], 12);
    assert_eq!(grid["upper"], 12);

    let dir = TempDir::new().unwrap();
    let pts = write(
        &dir,
        "p.json",
        &json!({"points": [{"id": "p", "x": 0, "y": 0}, {"id": "q", "x": 3, "y": 1}, {"id": "r", "x": 1, "y": 4}]}),
    );
    let exact = stdout_json(&wrg(&["stab", "--exact", &pts]));
    let built = stdout_json(&wrg(&["stab", "--construct", &pts]));
    let k = exact["exact"].as_u64().unwrap();
    assert!(built["lower"].as_u64().unwrap() <= k && k <= built["upper"].as_u64().unwrap());

    let found = wrg(&[
        "mng",
        "--find-counterexample",
        "--seed",
        "1",
        "--budget",
        "1000000",
    ]);
    assert!(found.status.success());
    let inst = dir.path().join("i.json");
    fs::write(&inst, &found.stdout).unwrap();
    let check = stdout_json(&wrg(&["mng", "--check", inst.to_str().unwrap()]));
    assert_eq!(check["mutual_complete"], true);
    assert_eq!(check["separator"], Value::Null);

    let none = wrg(&[
        "mng",
        "--find-counterexample",
        "--seed",
        "1",
        "--budget",
        "0",
    ]);
    assert_eq!(none.status.code(), Some(3));
}

#[test]
fn reads_stdin_when_no_path() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_wrg"))
        .args(["build", "--algo", "oracle"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(worked_scene().to_string().as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["edges"].as_array().unwrap().len(), 4);
}
