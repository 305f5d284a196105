use std::path::Path;
use std::process::{Command, Output};

use dilog_zeros::polylog::{eulerian_zeros, find_polylog_zeros};
use dilog_zeros::special_fn::Complex;
use dilog_zeros::zero_finder::find_zero;
use dilog_zeros::BranchIndex;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dilog-zeros")).args(args).output().unwrap()
}

fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dilog-zeros"))
        .args(args)
        .env("DILOG_ZEROS_THREADS", threads)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn complex(v: &Value) -> Complex {
    Complex::new(num(&v["re"]), num(&v["im"]))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn zero_matches_library_bit_for_bit() {
    let o = run(&["zero", "0", "-1"]);
    assert!(o.status.success());
    let rec = &json_lines(&stdout(&o))[0];
    assert_eq!(rec["kind"], "zero");
    assert_eq!(rec["schema_version"], "1");
    let cert = find_zero(BranchIndex::new(0, -1), dilog_zeros::cli::DEFAULT_TOL).unwrap();
    let z = complex(&rec["payload"]["zero"]);
    assert_eq!(z.re.to_bits(), cert.zero.re.to_bits());
    assert_eq!(z.im.to_bits(), cert.zero.im.to_bits());
    assert_eq!(num(&rec["payload"]["error_radius"]).to_bits(), cert.error_radius.to_bits());
    assert_eq!(rec["payload"]["iterations"], cert.iterations.len() - 1);
    assert!((z.re - 0.916_197_816_206_86).abs() < 1e-13 && (z.im + 0.182_458_897_207_14).abs() < 1e-13);
}

#[test]
fn zero_worked_example_and_tol_flag() {
    let o = run(&["zero", "1", "0", "--tol", "1e-10"]);
    assert!(o.status.success());
    let rec = &json_lines(&stdout(&o))[0];
    assert!((num(&rec["payload"]["zero"]["re"]) + 5995.08558).abs() < 5e-6);
    assert_eq!(num(&rec["payload"]["tol"]), 1e-10);
}

#[test]
fn unsupported_branch_exits_2() {
    let o = run(&["zero", "2", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("no zero"), "{err}");
    assert!(err.contains("requires −|B|/2 < A ≤ |B|/2"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["zero", "1"]).status.code(), Some(1));
    assert_eq!(run(&["zero", "a", "b"]).status.code(), Some(1));
    assert_eq!(run(&["polylog", "0.5", "3"]).status.code(), Some(1));
    assert_eq!(run(&["eulerian", "61"]).status.code(), Some(1));
    assert_eq!(run_with_threads(&["zero", "0", "1"], "lots").status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_enumerates_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.jsonl");
    let o = run(&["table", "1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let recs = json_lines(&read(&path));
    let branches: Vec<(i64, i64)> = recs
        .iter()
        .map(|r| (r["payload"]["branch"]["a"].as_i64().unwrap(), r["payload"]["branch"]["b"].as_i64().unwrap()))
        .collect();
    assert_eq!(branches, [(0, -1), (0, 0), (1, 0), (0, 1)]);

    let o = run(&["table", "3"]);
    let recs = json_lines(&stdout(&o));
    let has = |a: i64, b: i64| recs.iter().any(|r| r["payload"]["branch"]["a"] == a && r["payload"]["branch"]["b"] == b);
    assert!(has(1, 3) && has(-1, 3) && has(3, 0));
    assert!(!has(2, 3));
}

#[test]
fn table_is_deterministic_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    assert!(run_with_threads(&["table", "6", "--out", p1.to_str().unwrap()], "1").status.success());
    assert!(run_with_threads(&["table", "6", "--out", p2.to_str().unwrap()], "0").status.success());
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert!(run_with_threads(&["table", "6", "--out", p2.to_str().unwrap()], "3").status.success());
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn verify_sweeps() {
    let o = run(&["verify", "0", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&stdout(&o));
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["kind"], "count");
    assert_eq!(recs[0]["payload"]["count"], 1);

    let o = run(&["verify", "5", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&stdout(&o)).len(), 11 * 6);

    let o = run(&["verify", "10", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&stdout(&o));
    assert_eq!(recs.len(), 21 * 11);
    assert!(recs.iter().all(|r| r["payload"]["matches"] == true));
}

#[test]
fn curves_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let o = run(&["curves", "0", "1", "100", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let summary = &json_lines(&stdout(&o))[0];
    assert_eq!(summary["kind"], "curve");
    let text = read(&path);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("curve,param,value,residual"));
    let rows: Vec<(String, f64, f64, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| r.3.abs() < 1e-10));
    // g's radius and h's angle straddle the zero 0.916 + 0.182i, so the curves cross there
    let rho = find_zero(BranchIndex::new(0, 1), 1e-13).unwrap().zero;
    let g: Vec<_> = rows.iter().filter(|r| r.0 == "g").collect();
    let h: Vec<_> = rows.iter().filter(|r| r.0 == "h").collect();
    let (t0, r0) = (rho.arg(), rho.norm());
    let below = g.iter().rfind(|r| r.1 < t0).unwrap();
    let above = g.iter().find(|r| r.1 > t0).unwrap();
    assert!(below.2 > r0 && above.2 < r0);
    let before = h.iter().rfind(|r| r.1 < r0).unwrap();
    let after = h.iter().find(|r| r.1 > r0).unwrap();
    assert!(before.2 < t0 && after.2 > t0);
    assert!((rho - Complex::new(0.916, 0.182)).norm() < 1e-3);

    let again = run(&["curves", "0", "1", "100"]);
    assert_eq!(stdout(&again), text);
    assert_eq!(run(&["curves", "1", "0"]).status.code(), Some(2));
    assert_eq!(run(&["curves", "2", "3"]).status.code(), Some(2));
}

#[test]
fn polylog_spiral_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let o = run(&["polylog", "-10", "-44", "--jmax", "139", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let summary = &json_lines(&stdout(&o))[0];
    assert_eq!(summary["kind"], "polylog");
    assert_eq!(summary["payload"]["zeros"], 140);
    let text = read(&path);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,seed_re,seed_im,zero_re,zero_im,distance"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 140);
    assert!(rows.iter().all(|r| r[5] <= 1e-2));

    let set = find_polylog_zeros(Complex::new(-10.0, -44.0), 139).unwrap();
    for (r, z) in rows.iter().zip(&set.zeros) {
        assert_eq!(r[3].to_bits(), z.re.to_bits());
        assert_eq!(r[4].to_bits(), z.im.to_bits());
    }
    let again = run_with_threads(&["polylog", "-10", "-44", "--jmax", "139"], "1");
    assert_eq!(stdout(&again), text);
}

#[test]
fn polylog_positive_order() {
    let o = run(&["polylog", "10", "44"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text.lines().skip(1).map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    let target = Complex::new(21.1251, -6.7895);
    let nearest = rows
        .iter()
        .map(|r| Complex::new(r[3], r[4]))
        .min_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()))
        .unwrap();
    // the zero by the figure point; the figure's coordinates are off by about 2e-2
    assert!((nearest - Complex::new(21.140_961_801_416_7, -6.775_862_973_594_13)).norm() < 1e-9, "{nearest}");
    assert!((nearest - target).norm() < 2.5e-2);
}

#[test]
fn eulerian_records() {
    let rec = &json_lines(&stdout(&run(&["eulerian", "4"])))[0];
    assert_eq!(rec["kind"], "eulerian");
    assert_eq!(rec["payload"]["coefficients"], serde_json::json!(["1", "11", "11", "1"]));

    let rec = &json_lines(&stdout(&run(&["eulerian", "10"])))[0];
    let zeros = rec["payload"]["zeros"].as_array().unwrap();
    assert_eq!(zeros.len(), 9);
    let last = &zeros[8];
    assert_eq!(last["j"], 9);
    assert!((num(&last["zero"]) + 963.85).abs() < 5e-3);
    assert!((num(&last["sobolev"]) + 971.78).abs() < 5e-3);
    assert_eq!(num(&last["zero"]).to_bits(), eulerian_zeros(10).unwrap()[0].to_bits());

    let rec = &json_lines(&stdout(&run(&["eulerian", "1"])))[0];
    assert!(rec["payload"]["zeros"].as_array().unwrap().is_empty());
}

#[test]
fn floats_round_trip_through_text() {
    let o = run(&["table", "4"]);
    for rec in json_lines(&stdout(&o)) {
        let b = BranchIndex::new(rec["payload"]["branch"]["a"].as_i64().unwrap(), rec["payload"]["branch"]["b"].as_i64().unwrap());
        let cert = find_zero(b, dilog_zeros::cli::DEFAULT_TOL).unwrap();
        for (v, c) in rec["payload"]["trace"].as_array().unwrap().iter().zip(&cert.iterations) {
            let z = complex(v);
            assert_eq!((z.re.to_bits(), z.im.to_bits()), (c.re.to_bits(), c.im.to_bits()), "{b}");
        }
    }
}
