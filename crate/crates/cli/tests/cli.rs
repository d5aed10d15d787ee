use std::process::{Command, Output};

use bessel_order::bessel::{self, BesselKind};
use bessel_order::deriv::dj_dnu_series;
use bessel_order::quad::{tanh_sinh, QuadConfig};

fn besselord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn deriv_matches_series() {
    let o = besselord(&["deriv", "--kind", "J", "--n", "1", "--nu", "0.5", "--t", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let value = v["value"].as_f64().unwrap();
    let series = dj_dnu_series(0.5, 2.0).unwrap().value;
    assert!((value - series).abs() < 1e-10 * series.abs());
    assert_eq!(v["converged"], true);
    assert!(v["n_evals"].as_u64().unwrap() > 0);
}

#[test]
fn deriv_at_zero_argument_reports_limit() {
    let o = besselord(&["deriv", "--kind", "J", "--n", "2", "--nu", "1", "--t", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("value     = 0.0000000000000000e0"), "{out}");
    assert!(out.contains("limit value at t = 0"));
    let o = besselord(&["deriv", "--kind", "Y", "--n", "1", "--nu", "1", "--t", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["value_text"], "-inf");
}

#[test]
fn usage_errors_exit_one() {
    let o = besselord(&["deriv", "--kind", "Q", "--n", "1", "--nu", "1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown kind"));
    let o = besselord(&["frac", "--kind", "J", "--alpha", "-1", "--nu0", "0", "--nu", "1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = besselord(&["deriv", "--kind", "J", "--n", "1", "--nu", "-1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = besselord(&["nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn impossible_tolerance_exits_two() {
    let o = besselord(&["deriv", "--kind", "J", "--n", "1", "--nu", "0.5", "--t", "2", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("converged = false"));
}

#[test]
fn frac_alpha_one_matches_order_quadrature() {
    let o = besselord(&["frac", "--kind", "K", "--alpha", "1", "--nu0", "0.5", "--nu", "1.5", "--t", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let value = json(&o)["value"].as_f64().unwrap();
    let direct = tanh_sinh(|mu: f64| bessel::value(BesselKind::K, mu, 2.0).unwrap(), 0.5, 1.5, &QuadConfig::with_tol(1e-12))
        .unwrap()
        .value;
    assert!((value - direct).abs() < 1e-8);
}

#[test]
fn frac_at_zero_argument_reports_limit() {
    let o = besselord(&["frac", "--kind", "J", "--alpha", "0.5", "--nu0", "0", "--nu", "1", "--t", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("value     = 0.0000000000000000e0") && out.contains("limit value"), "{out}");
}

#[test]
fn tail_with_oracle() {
    let o = besselord(&["tail", "--kind", "I", "--nu", "1", "--t", "2", "--oracle", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["oracle"]["difference"].as_f64().unwrap().abs() < 1e-9);
    assert_eq!(v["oracle"]["sufficient"], true);
    let o = besselord(&["tail", "--kind", "K", "--nu", "1", "--t", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn small_grid_has_four_rows_and_limit_status() {
    let args = ["grid", "--kind", "Y", "--n", "1", "--nu-min", "0.5", "--nu-max", "2", "--t-min", "0", "--t-max", "3", "--nu-steps", "2", "--t-steps", "2"];
    let o = besselord(&args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "nu,t,value,err_est,status");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].ends_with("limit -inf"));
    assert!(lines[2].ends_with(",ok"));
    assert!(lines[1].starts_with("5.0000000000000000e-1,0.0000000000000000e0,"));
    assert_eq!(out, stdout(&besselord(&args)), "CSV is not byte-stable");
}

#[test]
fn fractional_grid_mode() {
    let o = besselord(&["grid", "--kind", "I", "--alpha", "0.5", "--nu0", "0", "--nu-min", "0.5", "--nu-max", "1", "--t-min", "1", "--t-max", "2", "--nu-steps", "2", "--t-steps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn figure_grid_converges_everywhere() {
    // Cell centres of a 64 × 64 partition of (0, 10)².
    let o = besselord(&["grid", "--kind", "J", "--n", "3", "--nu-min", "0.078125", "--nu-max", "9.921875", "--t-min", "0.078125", "--t-max", "9.921875"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4097);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn invalid_grid_is_a_usage_error() {
    let o = besselord(&["grid", "--kind", "J", "--n", "1", "--nu-steps", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = besselord(&["grid", "--kind", "J", "--nu-steps", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_report_schema() {
    let o = besselord(&["bench", "--suite", "deriv-n3", "--tolerances", "1e-8,1e-10", "--repeats", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "besselord-bench/1");
    assert_eq!(v["external_reference"]["reproducible"], false);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 4 * 3 * 2);
    for c in cases {
        for key in ["kind", "n", "nu", "t", "tol", "time_integral", "time_baseline", "chi", "values_agree"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        assert!(c["chi"].as_f64().unwrap() > 0.0);
        assert_eq!(c["values_agree"], true);
        assert_eq!(c["n"], 3);
    }
}

#[test]
fn bench_rejects_zero_repeats() {
    let o = besselord(&["bench", "--repeats", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = besselord(&["bench", "--suite", "deriv-n9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_runs_and_filters() {
    let o = besselord(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = besselord(&["selftest", "--filter", "fractional"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).all(|l| l.contains("fractional")));
    assert!(!out.contains("quadrature "));
}

#[test]
fn selftest_with_impossible_tolerance_exits_four() {
    let o = besselord(&["selftest", "--force-tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("FAIL"));
}
