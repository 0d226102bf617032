use std::process::{Command, Output};

use qdilog::parse::parse_complex;
use serde_json::Value;

fn qdilog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdilog")).args(args).env_remove("QDILOG_TOL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Rows of a CSV table as `(header, records)`.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn eval_tropical_phi() {
    let o = qdilog(&["eval", "--family", "tropical", "--target", "phi", "--args", "z=0+1i,m=3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let z = parse_complex(v["value"].as_str().unwrap()).unwrap();
    assert_eq!((z.re, z.im), (0.0, -1.0));
    assert_eq!(v["err"], 0.0);
}

#[test]
fn eval_dgg_weil_closed_form() {
    let o = qdilog(&[
        "eval",
        "--family",
        "dgg",
        "--q",
        "0.3",
        "--target",
        "weil_phi",
        "--args",
        "u=0.4,m=0,v=2,n=0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["err"], 0.0);
    let closed = parse_complex(v["value"].as_str().unwrap()).unwrap();
    let o = qdilog(&[
        "eval",
        "--family",
        "dgg",
        "--q",
        "0.3",
        "--target",
        "weil_phi",
        "--args",
        "u=0.4,m=0,v=2,n=0",
        "--rep",
        "series",
        "--tol",
        "1e-13",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let series = parse_complex(v["value"].as_str().unwrap()).unwrap();
    assert!((closed - series).norm() < 1e-10 * closed.norm());
}

#[test]
fn eval_faddeev_integral_reports_error_estimate() {
    let o = qdilog(&[
        "eval",
        "--family",
        "faddeev",
        "--b",
        "0.809+0.588i",
        "--target",
        "phi",
        "--args",
        "x=0.3",
        "--rep",
        "integral",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let err = v["err"].as_f64().unwrap();
    assert!(err > 0.0 && err < 1e-8);
    let prod = qdilog(&[
        "eval",
        "--family",
        "faddeev",
        "--b",
        "0.809+0.588i",
        "--target",
        "phi",
        "--args",
        "x=0.3",
        "--rep",
        "product",
        "--format",
        "json",
    ]);
    let w: Value = serde_json::from_str(stdout(&prod).trim()).unwrap();
    let a = parse_complex(v["value"].as_str().unwrap()).unwrap();
    let b = parse_complex(w["value"].as_str().unwrap()).unwrap();
    assert!((a - b).norm() < 1e-8);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(qdilog(&["eval", "--no-such-flag"]).status.code(), Some(64));
    assert_eq!(qdilog(&["eval", "--family", "tropical"]).status.code(), Some(64));
    assert_eq!(
        qdilog(&["eval", "--family", "tropical", "--target", "phi", "--args", "z=1,w=2"]).status.code(),
        Some(64)
    );
    assert_eq!(qdilog(&["verify", "--suite", "nonexistent"]).status.code(), Some(64));
    assert_eq!(qdilog(&["verify", "--check", "nonexistent"]).status.code(), Some(64));
    assert_eq!(qdilog(&[]).status.code(), Some(64));
    // domain
    assert_eq!(
        qdilog(&["eval", "--family", "dgg", "--q", "1.5", "--target", "phi", "--args", "z=1,m=0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qdilog(&["eval", "--family", "cyclic", "--n", "2", "--theta", "0.5", "--target", "gamma"]).status.code(),
        Some(2)
    );
    // help
    assert_eq!(qdilog(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_domain_error_is_reported() {
    let o = qdilog(&["verify", "--check", "unitarity", "--b", "0.8+0.5i"]);
    assert_eq!(o.status.code(), Some(2));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["error"]["kind"], "OutOfDomain");
    assert_eq!(lines[1]["summary"]["domain_errors"], 1);
}

#[test]
fn verify_single_checks() {
    let o = qdilog(&["verify", "--check", "irf_ybe", "--family", "tropical"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qdilog(&[
        "verify",
        "--check",
        "irf_ybe",
        "--family",
        "tropical",
        "--point",
        "x=1.5,x_m=1,y=0.9854+1.5553i,y_m=-2,p=0.5403+0.8415i,q=1.02,u=0.97,v=-0.4203+0.9184i",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qdilog(&["verify", "--check", "1psi1", "--point", "a=0.3,b=0.3,z=0.5,q=0.3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qdilog(&["verify", "--check", "pentagon", "--family", "tropical"]);
    let lines = json_lines(&o);
    assert_eq!(lines[0]["advisory"], true);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_faddeev_suite_passes() {
    let o = qdilog(&["verify", "--suite", "faddeev", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines = json_lines(&o);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["failed"], 0);
    for l in &lines[..lines.len() - 1] {
        assert!(l["lhs"].is_string());
        assert!(l["abs_residual"].is_number());
    }
}

#[test]
fn output_file_and_config_document() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("out.csv");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"command": "eval", "family": "tropical", "target": "phi", "args": {{"z": "2", "m": 3}},
                "format": "csv", "output": "{}"}}"#,
            out.display()
        ),
    )
    .unwrap();
    let o = qdilog(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let (header, rows) = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(header, ["m", "z", "re", "im", "abs", "err"]);
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 8.0);

    // Flags override the document.
    let o = qdilog(&["eval", "--config", cfg.to_str().unwrap(), "--args", "m=1", "--output", "/dev/stdout"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 2.0);

    std::fs::write(&cfg, r#"{"command": "eval", "unknown": 1}"#).unwrap();
    assert_eq!(qdilog(&["--config", cfg.to_str().unwrap()]).status.code(), Some(64));
}

#[test]
fn tolerance_environment_variable() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_qdilog"))
            .args([
                "eval",
                "--family",
                "faddeev",
                "--b",
                "1.1",
                "--target",
                "phi",
                "--args",
                "x=0.4",
                "--rep",
                "woronowicz",
                "--format",
                "json",
            ])
            .env("QDILOG_TOL", tol)
            .output()
            .unwrap()
    };
    let loose: Value = serde_json::from_str(stdout(&run("1e-4")).trim()).unwrap();
    let tight: Value = serde_json::from_str(stdout(&run("1e-12")).trim()).unwrap();
    assert!(tight["err"].as_f64().unwrap() <= loose["err"].as_f64().unwrap());
    assert_eq!(run("loose").status.code(), Some(64));
}

#[test]
fn table_unitarity_profile() {
    let o = qdilog(&["table", "--family", "faddeev", "--b", "1", "--target", "phi", "--grid", "x=-3:3:121"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["x", "re", "im", "abs", "err"]);
    assert_eq!(rows.len(), 121);
    for r in rows {
        assert!((r[3].parse::<f64>().unwrap() - 1.0).abs() < 1e-8);
    }
}

#[test]
fn table_theta_inversion_symmetry() {
    let o = qdilog(&["table", "--q", "0.3", "--target", "theta", "--grid", "x=circle:1:16"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    let val = |k: usize| parse_complex(&format!("{} {}", rows[k][1], rows[k][2])).unwrap();
    // On the unit circle 1/x is the point at angle -theta.
    for k in 1..16 {
        assert!((val(k) - val(16 - k)).norm() < 1e-14);
    }
}

#[test]
fn table_tropical_m_radius_sweep() {
    let o = qdilog(&[
        "table",
        "--family",
        "tropical",
        "--target",
        "irf_m",
        "--rep",
        "contour",
        "--args",
        "x=1.1,y=0.9,z=2",
        "--grid",
        "contour_radius=1.2:1.8:7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    let first = rows[0][1].parse::<f64>().unwrap();
    for r in &rows {
        assert!((r[1].parse::<f64>().unwrap() - first).abs() < 1e-12);
    }
}

#[test]
fn table_two_axes_and_error_rows() {
    let o = qdilog(&[
        "table",
        "--family",
        "tropical",
        "--target",
        "phi",
        "--grid",
        "z=circle:1:3",
        "--grid",
        "m=-1:1:3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["z", "m", "re", "im", "abs", "err"]);
    assert_eq!(rows.len(), 9);
    let o = qdilog(&[
        "table",
        "--family",
        "faddeev",
        "--b",
        "1",
        "--target",
        "phi",
        "--rep",
        "woronowicz",
        "--grid",
        "x=0:3i:2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[1][4], "OutOfDomain");
}

#[test]
fn table_is_deterministic() {
    let args = ["table", "--q", "0.4", "--target", "qpoch", "--args", "a=0.5,k=inf", "--grid", "q=0:0.9:10"];
    let a = qdilog(&args);
    let b = qdilog(&args);
    assert_eq!(a.stdout, b.stdout);
}
