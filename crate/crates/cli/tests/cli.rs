use std::process::{Command, Output};

use serde_json::Value;

fn luroth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_luroth"))
        .args(args)
        .env_remove("LUROTH_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = luroth(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<csv::StringRecord>) {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader.records().collect::<Result<_, _>>().unwrap();
    (headers, rows)
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn scalar_examples() {
    assert_eq!(
        stdout(&["expand", "--x", "2/3", "--n", "4"]).trim(),
        "2,4,2,2"
    );
    assert_eq!(stdout(&["dim", "--alpha", "0", "--beta", "0"]).trim(), "1");
    assert_eq!(
        stdout(&["solve-s", "--u", "0", "--tol", "1e-10"]).trim(),
        "1.0 ± 1e-10"
    );
    assert_eq!(
        stdout(&["dim", "--alpha", "0.4", "--beta", "0.5"]).trim(),
        "0"
    );
    assert_eq!(stdout(&["reconstruct", "--digits", "2,4"]).trim(), "5/8");
    assert_eq!(
        stdout(&["cylinder", "--digits", "2,4"]).trim(),
        "(5/8, 2/3]"
    );
}

#[test]
fn middle_case_dimension_matches_solver() {
    let dim = stdout(&["dim", "--alpha", "1/5", "--beta", "1/2", "--tol", "1e-9"]);
    let s = stdout(&["solve-s", "--u", "2", "--tol", "1e-9"]);
    assert_eq!(dim, s);
    assert!(dim.starts_with("0.69243245"));
}

#[test]
fn exit_codes() {
    // validation and domain errors
    assert_eq!(
        luroth(&["expand", "--x", "3/2", "--n", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(luroth(&["expand", "--x", "1/2"]).status.code(), Some(1));
    assert_eq!(
        luroth(&["expand", "--x", "1/2", "--n", "3", "--bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        luroth(&["dim", "--alpha", "0.6", "--beta", "0.5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(luroth(&["lln", "--n", "100"]).status.code(), Some(1));
    assert_eq!(
        luroth(&["reconstruct", "--digits", "2,1"]).status.code(),
        Some(1)
    );
    // exhaustion
    assert_eq!(
        luroth(&["solve-s", "--u", "1", "--tol", "1e-300"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(luroth(&["solve-s", "--u", "40"]).status.code(), Some(2));
    let args = [
        "enumerate",
        "--alpha",
        "1/5",
        "--beta",
        "1/2",
        "--depth",
        "20",
        "--budget",
        "10",
    ];
    assert_eq!(luroth(&args).status.code(), Some(2));
    let low = Command::new(env!("CARGO_BIN_EXE_luroth"))
        .args(["solve-s", "--u", "1"])
        .env("LUROTH_PRECISION_BITS", "20")
        .output()
        .unwrap();
    assert_eq!(low.status.code(), Some(2));
}

#[test]
fn csv_echoes_flags_and_parses() {
    let text = stdout(&["expand", "--x", "2/3", "--n", "4", "--format", "csv"]);
    assert!(text.starts_with("# x=2/3\n# n=4\n"));
    let (headers, rows) = csv_rows(&text);
    assert_eq!(headers, ["index", "digit"]);
    let digits: Vec<&str> = rows.iter().map(|r| &r[1]).collect();
    assert_eq!(digits, ["2", "4", "2", "2"]);
}

#[test]
fn json_round_trip() {
    let doc = json(&stdout(&[
        "solve-s", "--u", "0", "--M", "3", "--format", "json",
    ]));
    assert_eq!(doc["params"]["M"], "3");
    let value = doc["rows"][0]["value"].as_f64().unwrap();
    assert!((value - 0.6009668516136755).abs() < 1e-9);

    let doc = json(&stdout(&[
        "schedule", "--alpha", "1/5", "--beta", "1/2", "--k-max", "4", "--format", "json",
    ]));
    let rows = doc["rows"].as_array().unwrap();
    let n: Vec<u64> = rows.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    let n_prime: Vec<u64> = rows
        .iter()
        .map(|r| r["n_prime"].as_u64().unwrap())
        .collect();
    assert_eq!(n, [8, 24, 76, 272]);
    assert_eq!(n_prime, [9, 28, 83, 282]);
    assert_eq!(rows[1]["u"], "9/5");
}

#[test]
fn enumerate_table() {
    let text = stdout(&[
        "enumerate",
        "--alpha",
        "1/5",
        "--beta",
        "1/2",
        "--depth",
        "8",
    ]);
    let (headers, rows) = csv_rows(&text);
    assert_eq!(headers, ["word", "left", "length", "mu", "gap"]);
    assert_eq!(rows.len(), 256);
    let total: f64 = rows.iter().map(|r| r[3].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn dim_surface_table() {
    let text = stdout(&["dim-surface", "--resolution", "5", "--tol", "1e-8"]);
    let (headers, rows) = csv_rows(&text);
    assert_eq!(headers, ["alpha", "beta", "case", "dim", "err"]);
    assert_eq!(rows.len(), 25);
    let empty = rows.iter().filter(|r| r[2].is_empty()).count();
    assert_eq!(empty, 10);
}

#[test]
fn construct_reports_profile() {
    let args = [
        "construct",
        "--alpha",
        "1/5",
        "--beta",
        "1/2",
        "--k-max",
        "4",
        "--seed",
        "5",
    ];
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let doc = json(&stdout(&json_args));
    assert_eq!(doc["summary"]["profile_match"], true);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 540);
    assert_eq!(rows[8]["role"], "separator");
    assert_eq!(rows[8]["digit"], 6);
}

#[test]
fn seeded_commands_are_reproducible() {
    let args = ["lln", "--n", "2000", "--trials", "20", "--seed", "11"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = [
        "holder", "--alpha", "1/5", "--beta", "1/2", "--pairs", "50", "--seed", "2",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let (headers, rows) = csv_rows(&a);
    let slope = headers.iter().position(|h| h == "slope").unwrap();
    assert!(rows[0][slope].parse::<f64>().unwrap() > 0.0);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("luroth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gaps.csv");
    let p = path.to_str().unwrap();
    let out = stdout(&[
        "gap-check",
        "--alpha",
        "1/5",
        "--beta",
        "1/2",
        "--depth",
        "6",
        "--out",
        p,
    ]);
    assert!(out.is_empty());
    let (_, rows) = csv_rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| &r[4] == "0"));
    std::fs::remove_dir_all(&dir).unwrap();
}
