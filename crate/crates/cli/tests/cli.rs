use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbessel")).args(args).env_remove("QBESSEL_ORACLE").output().unwrap()
}

fn run_oracle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbessel")).args(args).env("QBESSEL_ORACLE", "1").output().unwrap()
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const I2_TABLE: &[&str] = &[
    "table",
    "--func",
    "I",
    "--kind",
    "2",
    "--nu",
    "0.5",
    "--z-start",
    "0.5",
    "--z-end",
    "1.5",
    "--steps",
    "3",
    "--q",
    "0.9",
];

/// (z, value) pairs from the oracle file for one (kind, nu, q).
fn oracle_rows() -> Vec<(String, f64, String)> {
    golden("oracle.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].to_string(), f[4].parse().unwrap(), f[5].to_string())
        })
        .collect()
}

#[test]
fn csv_header_is_fixed() {
    let out = stdout(&run(I2_TABLE));
    assert_eq!(out.lines().next().unwrap(), "func,kind,nu,q,z_re,z_im,value_re,value_im,converged");
}

#[test]
fn table_matches_oracle() {
    let out = stdout(&run(I2_TABLE));
    let want: Vec<_> = oracle_rows().into_iter().filter(|r| r.0 == "2").collect();
    for (line, (_, z, v)) in out.lines().skip(1).zip(&want) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[4].parse::<f64>().unwrap(), *z);
        let got: f64 = f[6].parse().unwrap();
        let v: f64 = v.parse().unwrap();
        assert!(((got - v) / v).abs() < 1e-12, "z={z}: {got} vs {v}");
        assert_eq!(f[8], "true");
    }
}

#[test]
fn extended_table_matches_oracle() {
    let out = stdout(&run_oracle(I2_TABLE));
    let want: Vec<_> = oracle_rows().into_iter().filter(|r| r.0 == "2").collect();
    for (line, (_, _, v)) in out.lines().skip(1).zip(&want) {
        let got = line.split(',').nth(6).unwrap();
        // agree in the first 28 significant digits
        let digits =
            |s: &str| s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').take(28).collect::<String>();
        assert_eq!(digits(got), digits(v), "{got} vs {v}");
    }
}

#[test]
fn golden_files_reproduce() {
    assert_eq!(stdout(&run(I2_TABLE)), golden("i2_table.csv"));
    let mut json = I2_TABLE.to_vec();
    json.extend(["--format", "json"]);
    assert_eq!(stdout(&run(&json)), golden("i2_table.json"));
    let eval = ["--json", "eval", "--func", "I", "--kind", "3", "--nu", "0.5", "--z", "1", "--q", "0.9"];
    assert_eq!(stdout(&run(&eval)), golden("i3_eval.json"));
}

#[test]
fn eval_json_record() {
    let out = run(&["--json", "eval", "--func", "I", "--kind", "3", "--nu", "0.5", "--z", "1", "--q", "0.9"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["converged"], true);
    assert_eq!(v["path"], "series");
    let x = v["value_re"].as_f64().unwrap();
    assert!(x > 0.0 && (x - 0.911_042_698_576_183_2).abs() < 1e-14);
}

#[test]
fn single_step_table_equals_eval() {
    let t = stdout(&run(&[
        "table",
        "--func",
        "K",
        "--kind",
        "2",
        "--nu",
        "1.3",
        "--z-start",
        "0.8",
        "--z-end",
        "0.8",
        "--steps",
        "1",
        "--q",
        "0.7",
    ]));
    let e = stdout(&run(&["--json", "eval", "--func", "K", "--kind", "2", "--nu", "1.3", "--z", "0.8", "--q", "0.7"]));
    let v: serde_json::Value = serde_json::from_str(&e).unwrap();
    let row = t.lines().nth(1).unwrap();
    assert_eq!(row.split(',').nth(6).unwrap().parse::<f64>().unwrap(), v["value_re"].as_f64().unwrap());
}

#[test]
fn pole_rows_are_flagged() {
    // the second grid point sits on the kind-1 pole 2/(1 − q²) at q = 0.5
    let out = run(&[
        "table",
        "--func",
        "I",
        "--kind",
        "1",
        "--nu",
        "0",
        "--z-start",
        "0",
        "--z-end",
        "5.333333333333333",
        "--steps",
        "3",
        "--q",
        "0.5",
    ]);
    assert!(out.status.success());
    let row = stdout(&out).lines().nth(2).unwrap().to_string();
    assert!(row.ends_with("NaN,NaN,false"), "{row}");
}

#[test]
fn exit_codes() {
    let pole = run(&["eval", "--func", "I", "--kind", "1", "--nu", "0", "--z", "2.6666666666666665", "--q", "0.5"]);
    assert_eq!(pole.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&pole.stderr).contains("r = 0"));

    let region =
        run(&["eval", "--func", "K", "--kind", "1", "--nu", "0.5", "--z", "0.1", "--q", "0.9", "--path", "closed"]);
    assert_eq!(region.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&region.stderr).contains("Re z >"));

    let short =
        run(&["--max-terms", "2", "eval", "--func", "I", "--kind", "3", "--nu", "0.5", "--z", "1", "--q", "0.9"]);
    assert_eq!(short.status.code(), Some(3));

    assert_eq!(
        run(&["eval", "--func", "I", "--kind", "3", "--nu", "0.5", "--z", "1", "--q", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "table",
            "--func",
            "I",
            "--kind",
            "3",
            "--nu",
            "0.5",
            "--z-start",
            "0",
            "--z-end",
            "1",
            "--steps",
            "0",
            "--q",
            "0.5"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn verify_defaults_and_sentinel() {
    assert_eq!(run(&["verify", "--suite", "diffeq"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "all", "--q", "0.95"]).status.code(), Some(0));
    let bad = run(&["--inject-fault", "1e-6", "verify", "--suite", "diffeq"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn verify_json_is_one_document() {
    let out = run(&["--json", "verify", "--suite", "wronskian"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["id"].is_string() && r["relative"].is_number()));
}

#[test]
fn k3_table_decreases() {
    let out = run(&[
        "table",
        "--func",
        "K",
        "--kind",
        "3",
        "--nu",
        "1",
        "--z-start",
        "0.5",
        "--z-end",
        "3",
        "--steps",
        "26",
        "--q",
        "0.8",
        "--assert-monotone",
    ]);
    assert!(out.status.success());
    let vals: Vec<f64> = stdout(&out).lines().skip(1).map(|l| l.split(',').nth(6).unwrap().parse().unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn limit_scans() {
    let qs = "0.9,0.99,0.999";
    for args in [
        vec![
            "limit-scan",
            "--func",
            "I",
            "--kind",
            "2",
            "--nu",
            "0.5",
            "--z",
            "1",
            "--q-list",
            qs,
            "--assert-monotone",
        ],
        vec![
            "limit-scan",
            "--func",
            "K",
            "--kind",
            "3",
            "--nu",
            "1.5",
            "--z",
            "2",
            "--q-list",
            qs,
            "--assert-monotone",
        ],
        vec!["limit-scan", "--func", "Q", "--nu", "0.5", "--q-list", qs, "--assert-monotone"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
    let out = stdout(&run(&["limit-scan", "--func", "Q", "--nu", "0.5", "--q-list", qs]));
    let last: f64 = out.lines().last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((last - std::f64::consts::FRAC_PI_2).abs() < 5e-3);
}
