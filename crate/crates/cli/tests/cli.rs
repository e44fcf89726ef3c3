use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_epr-universe"));
    c.env_remove("EPR_UNIVERSE_THREADS");
    c
}

fn exec(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = exec(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("error object on stderr");
    v["error"]["kind"].as_str().unwrap().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gen_file(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = exec(args);
    assert!(out.status.success());
    write(dir, name, std::str::from_utf8(&out.stdout).unwrap())
        .to_string_lossy()
        .into_owned()
}

#[test]
fn gen_cycle_8_is_the_bare_complex() {
    let out = exec(&["gen", "cycle", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"n_phi\":8,\"objects\":[0,1,2,3,4,5,6,7],\"edges\":[[0,1],[0,7],[1,2],[2,3],[3,4],[4,5],[5,6],[6,7]]}\n"
    );
}

#[test]
fn gen_embeds_in_a_larger_universe() {
    let v = ok_json(&["gen", "path", "3", "--n-phi", "5"]);
    assert_eq!(v["n_phi"], 5);
    assert_eq!(v["objects"], serde_json::json!([0, 1, 2]));
    let out = exec(&["gen", "path", "6", "--n-phi", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "ObjectOutsideUniverse");
}

#[test]
fn gnp_is_reproducible_per_seed() {
    let a = exec(&["gen", "gnp", "30", "0.2", "--seed", "9"]).stdout;
    let b = exec(&["gen", "gnp", "30", "0.2", "--seed", "9"]).stdout;
    let c = exec(&["gen", "gnp", "30", "0.2", "--seed", "10"]).stdout;
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(exec(&["gen", "gnp", "5", "1.5"]).status.code(), Some(2));
}

#[test]
fn aut_of_c8_has_order_16() {
    let dir = TempDir::new().unwrap();
    let c8 = gen_file(dir.path(), "c8.json", &["gen", "cycle", "8"]);
    let v = ok_json(&["aut", "--in", &c8, "--brute"]);
    assert_eq!(v["result"]["order"], 16);
    assert_eq!(v["result"]["brute_force_order"], 16);
    assert_eq!(v["command"], "aut");
    assert_eq!(v["seed"], 0);
    assert!(v["tool"].as_str().unwrap().starts_with("epr-universe "));
    for g in v["result"]["generators"].as_array().unwrap() {
        assert_eq!(g.as_array().unwrap().len(), 8);
    }
}

#[test]
fn chain_example_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let c32 = gen_file(dir.path(), "c32.json", &["gen", "cycle", "32"]);
    let args = [
        "chain", "--in", &c32, "--removals", "4", "--steps", "7", "--seed", "42", "--measure", "diffusion",
    ];
    let first = exec(&args);
    let second = exec(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["config"]["removals"], 4);
    assert_eq!(v["result"]["valid"], true);
    assert_eq!(v["result"]["basis_sizes"], serde_json::json!([32, 28, 24, 20, 16, 12, 8, 4]));
    assert_eq!(v["result"]["entropy"]["measure_name"], "diffusion");
    assert_eq!(v["result"]["entropy"]["values"].as_array().unwrap().len(), 8);
}

#[test]
fn resolution_entropy_csv() {
    let dir = TempDir::new().unwrap();
    let c32 = gen_file(dir.path(), "c32.json", &["gen", "cycle", "32"]);
    let out = exec(&["entropy", "--in", &c32, "--removals", "4", "--steps", "7", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# epr-universe"));
    assert_eq!(lines.next(), Some("step,basis_size,value,delta"));
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(&rows[6][2], "2");
    assert_eq!(&rows[7][2], "3");
}

#[test]
fn expand_reports_block_aligned_cutoffs() {
    let dir = TempDir::new().unwrap();
    let c64 = gen_file(dir.path(), "c64.json", &["gen", "cycle", "64"]);
    let v = ok_json(&["expand", "--in", &c64, "--removals", "4", "--steps", "7", "--seed", "42"]);
    assert_eq!(
        v["result"]["expansion"]["cutoff_series"],
        serde_json::json!([64, 61, 57, 53, 49, 45, 41, 37])
    );
    assert_eq!(v["result"]["expansion"]["monotone_fraction"], 1.0);
}

#[test]
fn ensembles_do_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let g = gen_file(dir.path(), "g.json", &["gen", "gnp", "24", "0.3", "--seed", "1"]);
    let run = |threads: &str| {
        let out = bin()
            .env("EPR_UNIVERSE_THREADS", threads)
            .args(["entropy", "--in", &g, "--removals", "2", "--steps", "5", "--ensemble", "6", "--seed", "3"])
            .args(["--measure", "resolution"])
            .output()
            .unwrap();
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["result"].clone()
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    assert_eq!(one["seeds"], serde_json::json!([3, 4, 5, 6, 7, 8]));
    assert_eq!(one["mean_monotone_fraction"], 1.0);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = bin().env("EPR_UNIVERSE_THREADS", "zero").args(["gen", "cycle", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "Usage");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(exec(&[]).status.code(), Some(2));
    assert_eq!(exec(&["teleport"]).status.code(), Some(2));
    assert_eq!(exec(&["chain", "--steps", "3"]).status.code(), Some(2));
    assert_eq!(exec(&["aut"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let c = gen_file(dir.path(), "c.json", &["gen", "cycle", "5"]);
    assert_eq!(exec(&["aut", "--in", &c, "--format", "csv"]).status.code(), Some(2));
    assert_eq!(exec(&["--help"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_1_with_error_object() {
    let dir = TempDir::new().unwrap();
    let looped = write(dir.path(), "bad.json", r#"{"n_phi":3,"objects":[0,1],"edges":[[1,1]]}"#);
    let out = exec(&["aut", "--in", looped.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "Parse");

    let c = gen_file(dir.path(), "c.json", &["gen", "cycle", "8"]);
    let out = exec(&["chain", "--in", &c, "--removals", "4", "--steps", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "PolicyExhaustsBasis");
    assert!(out.stdout.is_empty());

    let out = exec(&["chain", "--in", &c, "--removals", "1", "--steps", "2", "--measure", "vibes"]);
    assert_eq!(error_kind(&out), "UnknownMeasure");

    let out = exec(&["frucht", "--group", "s7", "--limit-frucht", "720"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "GroupTooLarge");

    let missing = dir.path().join("missing.json");
    let out = exec(&["flatness", "--in", missing.to_str().unwrap()]);
    assert_eq!(error_kind(&out), "Read");
}

#[test]
fn poset_queries() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let edge = write(d, "edge.json", r#"{"n_phi":2,"objects":[0,1],"edges":[[0,1]]}"#);
    let bare = write(d, "bare.json", r#"{"n_phi":2,"objects":[0,1],"edges":[]}"#);
    let (edge, bare) = (edge.to_str().unwrap(), bare.to_str().unwrap());

    let v = ok_json(&["poset", "meet", "--in", edge, "--in", bare]);
    assert_eq!(v["result"]["unique"], false);
    assert_eq!(v["result"]["bounds"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["selected_bound"]["objects"], serde_json::json!([0]));

    let v = ok_json(&["poset", "leq", "--in", edge, "--in", bare]);
    assert_eq!(v["result"]["leq"], false);
    assert_eq!(v["result"]["geq"], false);

    let p0 = write(d, "p0.json", r#"{"n_phi":2,"objects":[0],"edges":[]}"#);
    let p1 = write(d, "p1.json", r#"{"n_phi":2,"objects":[1],"edges":[]}"#);
    let v = ok_json(&["poset", "join", "--in", edge, "--in", p0.to_str().unwrap(), "--in", p1.to_str().unwrap()]);
    assert_eq!(v["result"]["join"]["edges"], serde_json::json!([[0, 1]]));

    let out = exec(&["poset", "join", "--in", p0.to_str().unwrap(), "--in", p1.to_str().unwrap()]);
    assert_eq!(error_kind(&out), "NotAnAspect");

    let v = ok_json(&["poset", "aspects", "--in", p0.to_str().unwrap()]);
    assert_eq!(v["result"]["count"], 2);
    assert_eq!(v["result"]["aspects"].as_array().unwrap().len(), 2);
    let v = ok_json(&["poset", "aspects", "--in", p0.to_str().unwrap(), "--limit-enum", "0"]);
    assert_eq!(v["result"]["enumerated"], false);
    assert_eq!(v["result"]["aspects"], Value::Null);
}

#[test]
fn frucht_output_feeds_aut() {
    let dir = TempDir::new().unwrap();
    let out = exec(&["frucht", "--group", "z2xz2"]);
    assert!(out.status.success());
    let report = write(dir.path(), "f.json", std::str::from_utf8(&out.stdout).unwrap());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["group_order"], 4);
    assert_eq!(v["result"]["realized_order"], 4);
    let a = ok_json(&["aut", "--in", report.to_str().unwrap()]);
    assert_eq!(a["result"]["order"], 4);

    let group = write(dir.path(), "z3.json", r#"{"degree":3,"generators":[[1,2,0]]}"#);
    let v = ok_json(&["frucht", "--in", group.to_str().unwrap()]);
    assert_eq!(v["result"]["realized_order"], 3);
    assert_eq!(v["result"]["vertex_count"], 18);
}

#[test]
fn spectral_and_flatness() {
    let dir = TempDir::new().unwrap();
    let k4 = gen_file(dir.path(), "k4.json", &["gen", "complete", "4"]);
    let v = ok_json(&["spectral", "--in", &k4, "--vectors"]);
    let vals: Vec<f64> = serde_json::from_value(v["result"]["eigenvalues"].clone()).unwrap();
    assert!(vals[0].abs() < 1e-9 && vals[1..].iter().all(|x| (x - 4.0).abs() < 1e-9));
    assert_eq!(v["result"]["eigenvectors"].as_array().unwrap().len(), 4);
    assert_eq!(v["result"]["blocks"], serde_json::json!([[0, 1], [1, 4]]));

    let s5 = gen_file(dir.path(), "s5.json", &["gen", "star", "5"]);
    let f = ok_json(&["flatness", "--in", &s5]);
    assert!(f["result"]["flatness"].as_f64().unwrap() < 1.0);
    assert_eq!(ok_json(&["flatness", "--in", &k4])["result"]["flatness"], 1.0);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("c5.json");
    let out = exec(&["gen", "cycle", "5", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.starts_with("{\"n_phi\":5"));
}

#[test]
fn in_process_run_matches_binary() {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = epr_universe_cli::run(["epr-universe", "gen", "star", "4"], &mut stdout, &mut stderr);
    assert_eq!(code, 0);
    assert_eq!(stdout, exec(&["gen", "star", "4"]).stdout);
}
