use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn capax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capax"))
        .args(args)
        .env_remove("CAPAX_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn ech_prefix_of_the_ball() {
    let out = capax(&["ech", "--weights", "1,1", "--count", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        v["result"]["values"],
        serde_json::json!(["0/1", "1/1", "1/1", "2/1", "2/1", "2/1", "3/1"])
    );
    assert!(v["seed"].is_u64());
}

#[test]
fn ech_csv() {
    let out = capax(&["ech", "--weights", "1,2", "--count", "4", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "j,value\n0,0/1\n1,1/1\n2,2/1\n3,2/1\n");
}

#[test]
fn embed_ball_into_ball() {
    let out = capax(&["embed", "--src", "1,2", "--dst", "3,3", "--jmax", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["verdict"]["factor"], "3/2");
}

#[test]
fn shell_family_and_separation() {
    let out = capax(&[
        "shell", "--r", "21/20", "--k", "2", "--n", "2", "--a0", "1/40", "--samples", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let sep = &v["result"]["separation"];
    assert_eq!(sep["bound"], "11240625/54700816");
    assert_eq!(sep["separates"], true);
    assert_eq!(v["result"]["family"].as_array().unwrap().len(), 5);
    assert_eq!(v["result"]["normalized"]["pass"], true);
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn shell_three_sample_report_passes() {
    let out = capax(&[
        "shell", "--r", "21/20", "--k", "2", "--n", "2", "--a0", "1/40", "--samples", "3", "--check", "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["result"]["separation"]["certificate"]["c0"], "551696/3418801");
}

#[test]
fn shell_rejects_bad_parameters() {
    let out = capax(&["shell", "--r", "2", "--k", "2", "--n", "2", "--a0", "1/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["kind"], "shells");
    let out = capax(&[
        "shell", "--r", "2", "--k", "2", "--n", "2", "--a0", "1/2", "--samples", "5", "--unchecked", "--check",
        "separation",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["separation"]["separates"], false);
    assert_eq!(v["result"]["pass"], false);
}

#[test]
fn icheck_from_file() {
    let dir = TempDir::new().unwrap();
    let fam = write(
        &dir,
        "fam.json",
        r#"[{"a":"-1/2","values":{"x":"-1","y":"2"}},
            {"a":"1/2","values":{"x":"-1","y":"3"}}]"#,
    );
    let out = capax(&["icheck", "--family", &fam]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["ell"], 2);
    assert!(v["result"]["certificate"]["is_i_collection"].is_boolean());
}

fn order_files(dir: &TempDir) -> (String, String) {
    let inst = write(
        dir,
        "inst.json",
        r#"{"kind":"vectors","elements":[
            {"name":"p","base":["1","2"]},
            {"name":"q","base":["2","1"]},
            {"name":"p2","base":["1","2"],"scale":"2"}]}"#,
    );
    let table = write(
        dir,
        "table.json",
        r#"{"min":{"p":"1","q":"1","p2":"2"}}"#,
    );
    (inst, table)
}

#[test]
fn order_recognize_and_generate() {
    let dir = TempDir::new().unwrap();
    let (inst, table) = order_files(&dir);
    let out = capax(&["order", "--instance", &inst, "--table", &table, "--check", "recognize"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["table_violation"], Value::Null);
    // min cannot tell p from q
    assert_eq!(v["result"]["check"]["holds"], false);

    let target = write(&dir, "target.json", r#"{"p":"3","q":"3","p2":"6"}"#);
    let out = capax(&[
        "order", "--instance", &inst, "--table", &table, "--check", "generate", "--target", &target,
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["check"]["holds"], true);
    assert_eq!(v["result"]["check"]["realized"], true);

    let target = write(&dir, "bad.json", r#"{"p":"3","q":"4","p2":"6"}"#);
    let out = capax(&[
        "order", "--instance", &inst, "--table", &table, "--check", "generate", "--target", &target,
    ]);
    assert_eq!(stdout_json(&out)["result"]["check"]["holds"], false);
}

#[test]
fn order_generate_needs_target() {
    let dir = TempDir::new().unwrap();
    let (inst, table) = order_files(&dir);
    let out = capax(&["order", "--instance", &inst, "--table", &table, "--check", "generate"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn kink_certificate_and_csv_file() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("curve.csv");
    let out = capax(&[
        "kink", "--a0", "2", "--h", "1/10", "--steps", "2", "--refute", "--curve-csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let cert = &v["result"]["certificate"];
    assert_eq!(cert["left"], "1/2");
    assert_eq!(cert["right"], "0/1");
    assert_eq!(cert["pass"], true);
    assert_eq!(v["result"]["refutation"]["refuted"], true);
    let text = std::fs::read_to_string(Path::new(&csv)).unwrap();
    assert!(text.starts_with("a,value,binding_index\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn kink_rejects_center_below_one() {
    let out = capax(&["kink", "--a0", "1/2", "--h", "1/10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["kind"], "kink");
}

#[test]
fn selftest_subset() {
    let out = capax(&["selftest", "--only", "1,8", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["result"]["passed"], 2);
    let out = capax(&["selftest", "--only", "99"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn exit_codes() {
    assert_eq!(capax(&["--help"]).status.code(), Some(0));
    assert_eq!(capax(&["--version"]).status.code(), Some(0));
    assert_eq!(capax(&[]).status.code(), Some(64));
    assert_eq!(capax(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(capax(&["ech", "--weights", "1,x", "--count", "3"]).status.code(), Some(1));
    let out = capax(&["ech", "--weights", "1", "--count", "10", "--max-prefix", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["exit_code"], 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "capax.conf", "seed = 11\noutput_format = csv\n");
    let out = capax(&["--config", &cfg, "ech", "--weights", "1", "--count", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "j,value\n0,0/1\n1,1/1\n");
    let out = capax(&["--config", &cfg, "--format", "json", "ech", "--weights", "1", "--count", "2"]);
    assert_eq!(stdout_json(&out)["seed"], 11);
    let bad = write(&dir, "bad.conf", "colour = blue\n");
    assert_eq!(capax(&["--config", &bad, "ech", "--weights", "1", "--count", "2"]).status.code(), Some(64));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "shell", "--r", "21/20", "--k", "2", "--n", "2", "--a0", "1/40", "--samples", "5",
    ];
    let a = capax(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_capax"))
        .args(args)
        .env("CAPAX_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}
