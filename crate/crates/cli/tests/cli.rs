use dini::suite::SuiteReport;
use dini::PropertyReport;
use dini_cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dini").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn zeros_of_half_order_dini_function() {
    let (code, out, _) = run(&["zeros", "--nu", "0.5", "--kind", "dini", "--count", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,zero\n1,1.5707963268\n2,4.7123889804\n3,7.8539816340\n");
    for (line, n) in out.lines().skip(1).zip(1..) {
        let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        let oracle = (2.0 * n as f64 - 1.0) * std::f64::consts::FRAC_PI_2;
        assert!((v - oracle).abs() < 1e-10);
    }
}

#[test]
fn zeros_json_lists_every_zero() {
    let (code, out, _) = run(&["zeros", "--nu", "0", "--kind", "bessel", "--count", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let zs = v["zeros"].as_array().unwrap();
    assert_eq!(zs.len(), 4);
    assert!((zs[0].as_f64().unwrap() - 2.404_825_557_695_773).abs() < 1e-12);
    assert_eq!(v["kind"], "bessel");
}

#[test]
fn verify_eta2_contains_closed_form() {
    let (code, out, _) = run(&["verify", "eta2", "--nu", "0"]);
    assert_eq!(code, 0);
    let r = PropertyReport::from_json(&out).unwrap();
    assert_eq!(r.params["closed_form"], 0.75);
    assert!(r.params["eta2_lower"] <= 0.75 && 0.75 <= r.params["eta2_upper"]);
    assert!(r.passed());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let (code, out, err) = run(&["eval", "--badflag"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("Usage"));
    let (code, _, _) = run(&["report", "--nu-grid"]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn domain_errors_exit_two_with_message() {
    for args in [
        &["eval", "--nu", "-1.5", "--x", "1"][..],
        &["eval", "--nu", "1", "--x", "-1"],
        &["zeros", "--nu", "0", "--count", "0"],
        &["figure", "--fig", "2"],
        &["sums", "--nu", "0", "--m", "0"],
        &["verify", "corput", "--nu", "0", "--a", "0.5"],
        &["verify", "bound", "--nu", "1", "--grid-min", "2", "--grid-max", "1"],
        &["verify", "nu-monotone", "--nu", "2", "--mu", "0"],
        &["eval", "--nu", "0", "--x", ""],
        &["report", "--nu-grid", ""],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(err.starts_with("error:"), "{args:?}: {err}");
    }
}

#[test]
fn failing_check_exits_one() {
    let (code, out, _) = run(&["verify", "product", "--nu", "0", "--count", "1"]);
    assert_eq!(code, 1);
    let r = PropertyReport::from_json(&out).unwrap();
    assert!(!r.passed());
    assert!(!r.violations.is_empty());
}

#[test]
fn eval_matches_closed_form_at_half_order() {
    let (code, out, _) = run(&["eval", "--nu", "0.5", "--x", "0,1,2.5"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("nu,x,j,d,g,g_prime"));
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let x = v[1];
        let pref = (2.0 / (std::f64::consts::PI * x)).sqrt();
        if x > 0.0 {
            assert!((v[2] - pref * x.sin()).abs() < 1e-14);
            assert!((v[3] - pref * x * x.cos()).abs() < 1e-14);
            assert!((v[4] - x.sin()).abs() < 1e-14);
            assert!((v[5] - x.cos()).abs() < 1e-14);
        } else {
            assert_eq!(&v[2..], &[0.0, 0.0, 0.0, 1.0]);
        }
    }
}

#[test]
fn figure_matches_golden_file() {
    let golden = include_str!("../../core/tests/golden/figure1.csv");
    let (code, out, _) = run(&["figure"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let (code, out, _) = run(&["figure", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden);
}

#[test]
fn figure_json_has_fixed_keys() {
    let (code, out, _) = run(&["figure", "--points", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let keys: Vec<&String> = rows[1].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["d1", "envelope", "x"]);
}

#[test]
fn sums_enclose_eta2() {
    let (code, out, _) = run(&["sums", "--nu", "1", "--m", "1", "--tol", "1e-7"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("m,lower,upper,n_used"));
    let cells: Vec<&str> = lines.next().unwrap().split(',').collect();
    let lo: f64 = cells[1].parse().unwrap();
    let hi: f64 = cells[2].parse().unwrap();
    assert!(lo <= 0.375 && 0.375 <= hi && hi - lo <= 1e-7);
}

#[test]
fn report_is_deterministic_and_complete() {
    let args = [
        "report", "--nu-grid", "-0.5,0,1", "--mu-offsets", "0,1", "--grid-points", "6", "--pairs", "10",
    ];
    let (code, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let suite = SuiteReport::from_json(&first).unwrap();
    let keys: Vec<&str> = suite.entries.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(keys, dini::suite::SUITE_KEYS);
    assert_eq!(suite.to_json() + "\n", first);
}

#[test]
fn report_csv_summary_has_one_row_per_key() {
    let (code, out, _) = run(&[
        "report", "--nu-grid", "0.5", "--mu-offsets", "0", "--grid-points", "4", "--pairs", "4", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "id,name,verdict,min_margin,violations,notes");
    assert_eq!(lines.len(), 16);
    assert!(lines.iter().skip(1).all(|l| l.contains(",PASS")));
}
