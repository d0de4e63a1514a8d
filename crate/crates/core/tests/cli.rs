use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sumsetlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sumsetlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn gen(args: &[&str], name: &str) -> PathBuf {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    scratch(name, &stdout(&out))
}

#[test]
fn rotation_system_on_unit_cube_has_25_points() {
    let rot = gen(&["gen", "rotation", "--d", "2"], "rot2.json");
    let cube = gen(&["gen", "cube", "--d", "2", "--N", "1"], "cube.json");
    let out = run(&["sumset", "--system", rot.to_str().unwrap(), "--set", cube.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["size"], 25);
    assert_eq!(v["set"]["points"].as_array().unwrap().len(), 25);
}

#[test]
fn minkowski_sum_of_files() {
    let a = scratch("a.json", r#"{"dim":1,"points":[[0],[1]]}"#);
    let b = scratch("b.json", r#"{"dim":1,"points":[[0],[10]]}"#);
    let out = run(&["sumset", "--sets", a.to_str().unwrap(), b.to_str().unwrap(), "--count-only"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"size":4}"#);
}

#[test]
fn input_errors_exit_with_2() {
    let empty = scratch("empty.json", "");
    assert_eq!(run(&["sumset", "--sets", empty.to_str().unwrap()]).status.code(), Some(2));
    let mixed = scratch("mixed.json", r#"{"dim":2,"points":[[0,0],[1]]}"#);
    assert_eq!(run(&["sumset", "--sets", mixed.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no_such_statement"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "simplex_formula", "--k", "3..1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["--precision-cap", "64", "verify", "simplex_formula"]).status.code(),
        Some(2)
    );
}

#[test]
fn point_budget_is_enforced() {
    let out = run(&["sumset", "--set", "cube:3:20", "--k", "4", "--max-points", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn simplex_formula_csv() {
    let out = run(&["verify", "simplex_formula", "--d", "2", "--N", "4", "--k", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "statement_id,d,N,k,seed,lhs,rhs,slack,verdict\nsimplex_formula,2,4,2,1,9,9,0,holds\n"
    );
}

#[test]
fn gs_kfold_on_grids_is_tight() {
    let out = run(&["verify", "gs_kfold", "--grids", "2x2,2x2,2x2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["slack"], "0");
}

#[test]
fn freiman_kfold_on_random_set_holds() {
    let out = run(&["verify", "freiman_kfold", "--set", "random", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(r#""verdict":"holds""#));
}

#[test]
fn violated_certificate_exits_with_1() {
    // The shear check asserts |L_1(X) + L_2(X)| = |X|^2, which fails for the identity pair.
    let out = run(&["verify", "shear_counterexample", "--system", "identity:2:2", "--set", "shear:3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains(r#""verdict":"violated""#));
}

#[test]
fn indeterminate_probe_exits_with_3() {
    let out = run(&["probe", "main-term", "--system", "rotation:2", "--set", "random:2:8:4:1"]);
    assert_eq!(out.status.code(), Some(0));
    // |A + A| = 25 < 4|A| = 36 for the 3x3 cube: a positive deficit is only reported.
    let out = run(&["probe", "main-term", "--system", "identity:2:2", "--set", "cube:2:1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains(r#""deficit":"11""#));
}

#[test]
fn sweeps_are_deterministic_across_job_counts() {
    let args = ["verify", "elementary", "--d", "1..3", "--k", "2..3", "--seeds", "1..3", "--format", "csv"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let four = run(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 1 + 3 * 2 * 3);
}

#[test]
fn reduce_cases() {
    let out = run(&["reduce", "--set", "simplex:3:7"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["steps"], 0);

    let square = scratch("square.json", r#"{"dim":2,"points":[[0,0],[0,1],[1,0],[1,1]]}"#);
    let out = run(&["reduce", "--set", square.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let simplex = run(&["gen", "simplex", "--d", "2", "--N", "4"]);
    assert_eq!(v["simplex"].to_string(), stdout(&simplex).trim());

    let line = scratch("line.json", r#"{"dim":2,"points":[[0,0],[1,1],[2,2]]}"#);
    assert_eq!(run(&["reduce", "--set", line.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn compress_and_project() {
    let set = scratch("l.json", r#"{"dim":2,"points":[[0,3],[2,5]]}"#);
    let out = run(&["compress", "--set", set.to_str().unwrap(), "--axis", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(r#""points":[["0","0"],["2","0"]]"#));

    let out = run(&["project", "--set", "cube:2:1", "--indices", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["size"], 3);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("sumsetlab-out-{}.json", std::process::id()));
    let out = run(&["gen", "simplex", "--d", "2", "--N", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(sumsetlab::io::parse_point_set(&text).unwrap().len(), 5);
}

#[test]
fn suite_single_criterion() {
    let out = run(&["suite", "smoke", "--criterion", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"][0]["id"], 5);
}
