use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use curvecx::complex::Vertex;
use curvecx::enumerate::enumerate_curves;
use curvecx::path::RawPath;
use curvecx::surface::build_surface;
use serde_json::Value;

fn curvecx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvecx")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn surface_info_describes_the_model() {
    let v = stdout_json(&curvecx(&["surface", "info", "-g", "1", "-b", "3", "--json"]));
    assert_eq!(v["genus"], 1);
    assert_eq!(v["boundary_count"], 3);
    let text = curvecx(&["surface", "info", "-g", "0", "-b", "5"]);
    assert!(text.status.success());
    assert!(!text.stdout.is_empty());
}

#[test]
fn bad_input_exits_with_code_2() {
    assert_eq!(curvecx(&["surface", "info", "-g", "0", "-b", "0"]).status.code(), Some(2));
    assert_eq!(curvecx(&["check", "run", "--checks", "T9"]).status.code(), Some(2));
    assert_eq!(curvecx(&["check", "run", "--surface", "zero,five"]).status.code(), Some(2));
    assert_eq!(curvecx(&["check", "run", "--norm", "2"]).status.code(), Some(2));
    let missing = curvecx(&["ball", "distance", "--ball", "/nonexistent.json", "--u", "x", "--v", "y"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
}

#[test]
fn a_passing_check_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = curvecx(&["check", "run", "--surface", "0,5", "--checks", "T2", "--norm", "8", "--out", p(&out)]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).contains("T2 S_(0,5) PASS"));
    let report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema"], "curvecx.report/1");
    assert_eq!(report["failed"], false);
    assert_eq!(report["reports"][0]["check"], "T2");
    assert_eq!(report["reports"][0]["verdict"], "pass");
}

#[test]
fn a_failing_check_exits_with_code_1() {
    // The general path projection for the wrap curve fails at the default bound.
    let run = curvecx(&["check", "run", "--surface", "1,3", "--checks", "T7", "--json"]);
    assert_eq!(run.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(report["failed"], true);
    let failing: Vec<&Value> = report["reports"][0]["criteria"].as_array().unwrap().iter().filter(|c| c["verdict"] == "fail").collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| !c["counterexample"].is_null()));
}

#[test]
fn balls_answer_distance_queries_and_paths_project() {
    let dir = tempfile::tempdir().unwrap();
    let ball = dir.path().join("d.json");
    let built = curvecx(&["ball", "build", "-g", "0", "-b", "5", "--kind", "D", "--norm", "8", "--out", p(&ball)]);
    assert!(built.status.success());
    let ball_json: Value = serde_json::from_str(&fs::read_to_string(&ball).unwrap()).unwrap();
    let vertices = ball_json["vertices"].as_array().unwrap();

    // Two annuli far apart in the ball.
    let listed = curvecx(&["domains", "enumerate", "-g", "0", "-b", "5", "--norm", "8"]);
    let lines: Vec<&str> = std::str::from_utf8(&listed.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), vertices.len());
    let annuli: Vec<&str> = lines.iter().copied().filter(|l| l.contains("\"annulus\"")).collect();
    let (u, v) = (dir.path().join("u.json"), dir.path().join("v.json"));
    fs::write(&u, annuli[0]).unwrap();
    let mut best = None;
    for a in &annuli[1..] {
        fs::write(&v, a).unwrap();
        let d = stdout_json(&curvecx(&["ball", "distance", "--ball", p(&ball), "--u", p(&u), "--v", p(&v)]));
        assert!(d["lower"].as_u64() <= d["upper"].as_u64());
        if best.as_ref().is_none_or(|b: &Value| b["upper"].as_u64() < d["upper"].as_u64()) {
            best = Some(d);
        }
    }
    let best = best.unwrap();
    assert!(best["upper"].as_u64().unwrap() >= 2);
    assert_eq!(best["witness"]["vertices"].as_array().unwrap().len() as u64, best["upper"].as_u64().unwrap() + 1);

    let path = dir.path().join("path.json");
    fs::write(&path, best["witness"].to_string()).unwrap();
    let projected = stdout_json(&curvecx(&["map", "project-path", "-g", "0", "-b", "5", p(&path)]));
    assert_eq!(projected["kind"], "C");
    assert!(projected["vertices"].as_array().unwrap().len() <= best["witness"]["vertices"].as_array().unwrap().len());

    let dot = curvecx(&["ball", "build", "-g", "0", "-b", "5", "--kind", "C", "--norm", "8", "--format", "dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("graph"));
}

#[test]
fn paths_canonicalize_to_their_class() {
    let s = build_surface(0, 5).unwrap();
    let c = enumerate_curves(&s, 8).pop().unwrap();
    let mut exits = c.exits(&s);
    exits.rotate_left(1);
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("raw.json");
    fs::write(&raw, serde_json::to_string(&RawPath::Closed { exits }).unwrap()).unwrap();
    let got = stdout_json(&curvecx(&["classes", "canonicalize", "-g", "0", "-b", "5", "--kind", "curve", p(&raw)]));
    assert_eq!(serde_json::from_value::<Vertex>(got).unwrap(), Vertex::Curve(c));
}

#[test]
fn wrap_and_disjointness_commands() {
    let w = stdout_json(&curvecx(&["map", "wrap", "-g", "1", "-b", "3"]));
    assert!(w["curve"].is_object() && w["b_side"].is_object() && w["c_side"].is_object());
    assert_eq!(curvecx(&["map", "wrap", "-g", "0", "-b", "5"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let s = build_surface(0, 5).unwrap();
    let c = enumerate_curves(&s, 8).remove(0);
    let annulus = serde_json::json!({"vertex": "domain", "type": "annulus", "core": {"coords": c.coords}});
    fs::write(&a, annulus.to_string()).unwrap();
    fs::write(&b, annulus.to_string()).unwrap();
    // A domain is not disjoint from itself: distinct vertices are required.
    assert_eq!(curvecx(&["domains", "disjoint", "-g", "0", "-b", "5", p(&a), p(&b)]).status.code(), Some(2));
}
