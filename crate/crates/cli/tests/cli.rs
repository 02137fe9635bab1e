use std::path::Path;
use std::process::{Command, Output};

use radbound::{make_ball, make_cutthetip, parse_body, write_body, Body, SpaceForm};
use serde_json::Value;

fn radbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.json");
    let o = radbound(&[
        "gen", "--kappa", "0", "--dim", "2", "--balls", "3", "--radius-min", "0.5", "--radius-max", "1",
        "--target-A", "1", "--seed", "7", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let body: Body<f64> = parse_body(&text).unwrap();
    assert_eq!(body.balls().len(), 3);
    assert!(body.base_angle_lower_bound() >= 1.0);
    assert_eq!(write_body(&body), text);
    let again = radbound(&[
        "gen", "--kappa", "0", "--dim", "2", "--balls", "3", "--radius-min", "0.5", "--radius-max", "1",
        "--target-A", "1", "--seed", "7",
    ]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn gen_spherical_and_rejections() {
    let o = radbound(&["gen", "--kappa", "1", "--dim", "2", "--radius-min", "0.3", "--radius-max", "0.7853981633974483"]);
    assert_eq!(code(&o), 0);
    let body: Body<f64> = parse_body(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!(body.base_angle_lower_bound() >= 1.0 - 1e-12);
    let o = radbound(&["gen", "--radius-min", "1", "--radius-max", "2", "--target-A", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("model radius"));
}

#[test]
fn verify_files_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ball = write(dir.path(), "ball.json", &write_body(&make_ball(SpaceForm::flat(2).unwrap(), 1.0f64).unwrap()));
    let o = radbound(&["verify", &ball]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["pass"], true);
    assert_eq!(r["rigidity"]["rigid"], true);

    let tip = write(dir.path(), "tip.json", &write_body(&make_cutthetip(1.0f64, 0.5, 0.1).unwrap()));
    let o = radbound(&["verify", &tip]);
    assert_eq!(code(&o), 0);
    let terms: Vec<f64> = json(&o)["chain"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let root = 0.75f64.sqrt();
    for (t, e) in terms.iter().zip([0.5, root, root, root, 1.0]) {
        assert!((t - e).abs() < 1e-6);
    }

    // A negative tolerance demands strict slack, which the tip body cannot meet.
    let o = radbound(&["verify", &tip, "--tol", "-0.01"]);
    assert_eq!(code(&o), 1);

    let bad = write(dir.path(), "bad.json", "{\"kappa\": 0,\n\"dim\": 2,\n\"balls\": [{\"center\": [0], \"radius\": 1}]}");
    let o = radbound(&["verify", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("balls[0].center"));
    let broken = write(dir.path(), "broken.json", "{\"kappa\": 0,\n\"dim\": ,");
    let o = radbound(&["verify", &broken]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&radbound(&["verify", "/nonexistent/body.json"])), 2);
}

#[test]
fn example_command() {
    let o = radbound(&["example"]);
    assert_eq!(code(&o), 0);
    let t: Vec<f64> = json(&o)["chain"]["terms"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!((t[1] - t[2]).abs() < 1e-4 && (t[2] - t[3]).abs() < 1e-4);
    assert!(t[3] < t[4] - 0.1);
    let o = radbound(&["example", "--A", "2", "--a", "0.25", "--eps", "0.05"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["chain"]["pass"], true);
    assert_eq!(code(&radbound(&["example", "--A", "1", "--a", "1.5", "--eps", "0.1"])), 2);
}

#[test]
fn ode_command() {
    let o = radbound(&["ode", "--kappa", "1", "--f0", "0.2", "--df0", "0.5", "--forcing", "1"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["outcome"]["worst_residual"].as_f64().unwrap().abs() < 1e-12);
    let o = radbound(&["ode", "--kappa", "0", "--f0", "0.1", "--df0", "-0.3", "--forcing", "poly:1,0,1", "--horizon", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["pass"], true);
    let o = radbound(&["ode", "--kappa", "1", "--forcing", "pwl:0:1,1:2.5,2:1"]);
    assert_eq!(code(&o), 0);
    let o = radbound(&["ode", "--forcing", "0.9"]);
    assert_eq!(code(&o), 2);
    assert!(json(&o)["error"].as_str().unwrap().contains("hypothesis"));
    assert_eq!(code(&radbound(&["ode", "--forcing", "poly:x"])), 2);
}

fn sweep_csv(args: &[&str]) -> (i32, String) {
    let o = radbound(args);
    (code(&o), String::from_utf8(o.stdout).unwrap())
}

#[test]
fn sweeps() {
    let (c, csv) = sweep_csv(&["sweep", "--kappa", "0", "--dim", "2", "--count", "1000", "--seed", "1", "--format", "csv"]);
    assert_eq!(c, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1001);
    assert!(lines[0].starts_with("index,seed,kappa,dim,balls,A,a,rad,b,bound_b,model_R,chain_pass"));
    let chain_col = lines[0].split(',').position(|h| h == "chain_pass").unwrap();
    assert!(lines[1..].iter().all(|l| l.split(',').nth(chain_col) == Some("true")));

    let (c, csv) = sweep_csv(&["sweep", "--kappa", "1", "--dim", "2", "--count", "200", "--seed", "2", "--format", "csv"]);
    assert_eq!(c, 0);
    assert_eq!(csv.lines().count(), 201);

    let (c, csv) = sweep_csv(&["sweep", "--count", "0", "--seed", "3", "--format", "csv"]);
    assert_eq!(c, 0);
    assert_eq!(csv.lines().count(), 1);

    let args = ["sweep", "--kappa", "0", "--dim", "3", "--count", "50", "--seed", "4", "--format", "csv"];
    assert_eq!(sweep_csv(&args).1, sweep_csv(&args).1);

    assert_eq!(code(&radbound(&["sweep", "--count", "3"])), 2);
}
