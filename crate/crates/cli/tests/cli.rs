use std::io::Write;
use std::process::Command;

use cs_geometry_cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("csgeo").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn temp_config(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("csgeo-{}-{name}.json", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(body.as_bytes())
        .unwrap();
    path
}

#[test]
fn hierarchy_prints_chain() {
    let (code, out, _) = call(&["hierarchy", "--k0", "1", "--depth", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "[1,2,5,20,230]");
    let (_, csv, _) = call(&["hierarchy", "--k0", "4", "--depth", "3", "--format", "csv"]);
    assert_eq!(csv, "step,k\n0,4\n1,14\n2,119\n3,7259\n");
}

#[test]
fn orthogonal_rays_are_pi_apart() {
    let d = json(&["distance", "--v", "1,0", "--w", "0,1"]);
    assert!((d.as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-12);
    let same = json(&["distance", "--v", "1,1i", "--w", "-2i,2"]);
    assert!(same.as_f64().unwrap().abs() < 1e-7);
}

#[test]
fn full_verification_suite_passes() {
    let (code, out, err) = call(&["verify", "all", "--tol", "1e-6"]);
    assert_eq!(code, 0, "{err}");
    let reports: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert!(reports.len() > 30);
    assert!(reports.iter().all(|r| r["passed"] == Value::Bool(true)));
    assert!(!err.contains("FAIL"));
}

#[test]
fn failed_verification_exits_one() {
    let (code, _, err) = call(&["verify", "su2", "--tol", "1e-20", "--samples", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("FAIL su2 metric"));
}

#[test]
fn usage_and_domain_errors_exit_two() {
    assert_eq!(call(&["bogus"]).0, 2);
    assert_eq!(call(&["hierarchy", "--k0", "1"]).0, 2);
    assert_eq!(
        call(&["hierarchy", "--k0", "1", "--depth", "2", "--nope"]).0,
        2
    );
    assert_eq!(call(&["verify", "nonexistent"]).0, 2);
    let (code, _, err) = call(&[
        "coherent", "--family", "su2", "--n", "2", "--theta", "4", "--phi", "0",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("theta"));
    assert_eq!(
        call(&["coherent", "--family", "su11", "--xi", "0.9+0.9i"]).0,
        2
    );
    assert_eq!(call(&["distance", "--v", "1,0", "--w", "1+2"]).0, 2);
    assert_eq!(call(&["kernel", "--zeta", "1.5"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn sweep_su2_metric_is_constant_in_theta() {
    let rows = json(&[
        "sweep",
        "--family",
        "su2",
        "--n",
        "3",
        "--theta",
        "1",
        "--phi",
        "0.3",
        "--vary",
        "theta",
        "--values",
        "0.2:2.9:7",
        "--quantity",
        "metric",
    ]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let theta = row["theta"].as_f64().unwrap();
        assert!((row["g_theta_theta"].as_f64().unwrap() - 3.0).abs() < 1e-6);
        assert!((row["g_phi_phi"].as_f64().unwrap() - 3.0 * theta.sin().powi(2)).abs() < 1e-6);
    }
}

#[test]
fn sweep_rational_curve_curvature() {
    let rows = json(&[
        "sweep",
        "--family",
        "veronese",
        "--zeta",
        "0.3+0.1i",
        "--n",
        "1",
        "--vary",
        "n",
        "--values",
        "1,2,3,4,5",
        "--quantity",
        "curvature",
    ]);
    let got: Vec<f64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["scalar_curvature"].as_f64().unwrap())
        .collect();
    for (n, r) in (1..=5).zip(got) {
        assert!((r - 2.0 / f64::from(n)).abs() < 1e-4, "n={n}: {r}");
    }
}

#[test]
fn sweep_rows_follow_grid_order() {
    let rows = json(&[
        "sweep",
        "--family",
        "su2",
        "--n",
        "2",
        "--theta",
        "0",
        "--phi",
        "0",
        "--vary",
        "theta",
        "--values",
        "2.5,0.1,1.7",
        "--quantity",
        "distance",
    ]);
    let thetas: Vec<f64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["theta"].as_f64().unwrap())
        .collect();
    assert_eq!(thetas, vec![2.5, 0.1, 1.7]);
    // Distance from the north pole grows with θ.
    let d: Vec<f64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["distance"].as_f64().unwrap())
        .collect();
    assert!(d[1] < d[2] && d[2] < d[0]);
}

#[test]
fn empty_grid_gives_empty_table() {
    let base = [
        "sweep", "--family", "su2", "--n", "3", "--theta", "1", "--phi", "0", "--vary", "theta",
        "--values", "",
    ];
    let (code, out, _) = call(&[&base[..], &["--quantity", "norm"]].concat());
    assert_eq!((code, out.trim()), (0, "[]"));
    let (code, out, _) = call(&[&base[..], &["--quantity", "norm", "--format", "csv"]].concat());
    assert_eq!((code, out.as_str()), (0, "theta,norm\n"));
}

#[test]
fn identical_seeds_give_identical_output() {
    let args = ["verify", "scaling", "--samples", "5", "--seed", "7"];
    let (_, a, _) = call(&args);
    let (_, b, _) = call(&args);
    assert_eq!(a, b);
    let (_, c, _) = call(&["verify", "scaling", "--samples", "5", "--seed", "8"]);
    assert_ne!(a, c);
}

#[test]
fn config_file_values_yield_to_flags() {
    let path = temp_config("hier", r#"{"k0": 3, "depth": 3}"#);
    let p = path.to_str().unwrap();
    assert_eq!(
        call(&["hierarchy", "--config", p]).1.trim(),
        "[3,9,54,1539]"
    );
    assert_eq!(
        call(&["hierarchy", "--config", p, "--depth", "1"]).1.trim(),
        "[3,9]"
    );
    assert_eq!(
        call(&["--config", p, "hierarchy", "--k0", "1"]).1.trim(),
        "[1,2,5,20]"
    );

    let sweep = temp_config(
        "sweep",
        r#"{"family": "su2", "n": 3, "theta": 1.0, "phi": 0.0, "vary": "theta", "values": [0.5, 1.5], "quantity": "norm"}"#,
    );
    let rows = json(&["sweep", "--config", sweep.to_str().unwrap()]);
    assert_eq!(rows.as_array().unwrap().len(), 2);

    let bad = temp_config("bad", "[1, 2]");
    assert_eq!(call(&["hierarchy", "--config", bad.to_str().unwrap()]).0, 2);
    let unknown = temp_config("unknown", r#"{"k0": 1, "depth": 1, "bogus": 3}"#);
    assert_eq!(
        call(&["hierarchy", "--config", unknown.to_str().unwrap()]).0,
        2
    );
    assert_eq!(
        call(&["hierarchy", "--config", "/nonexistent/csgeo.json"]).0,
        2
    );
    for f in [path, sweep, bad, unknown] {
        let _ = std::fs::remove_file(f);
    }
}

#[test]
fn environment_sets_default_tolerance() {
    let bin = env!("CARGO_BIN_EXE_csgeo");
    let status = Command::new(bin)
        .args(["verify", "su2", "--samples", "3"])
        .env("CSGEO_TOL", "1e-20")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = Command::new(bin)
        .args(["verify", "su2", "--samples", "3", "--tol", "1e-6"])
        .env("CSGEO_TOL", "1e-20")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
}

#[test]
fn embed_reports_labels_and_signature() {
    let doc = json(&[
        "embed",
        "--point",
        "1.2,0.3",
        "--degree",
        "2",
        "--signature=-,+",
    ]);
    assert_eq!(doc["dimension"], 3);
    assert_eq!(doc["entries"][1]["label"], serde_json::json!([1, 1]));
    assert_eq!(
        (doc["positive"].as_u64(), doc["negative"].as_u64()),
        (Some(2), Some(1))
    );
    let base = -1.44 + 0.09;
    assert!((doc["pseudo_norm"].as_f64().unwrap() - base * base).abs() < 1e-12);
}

#[test]
fn coherent_states_and_metrics() {
    let doc = json(&[
        "coherent", "--family", "su11", "--xi", "0.3-0.2i", "--cutoff", "200",
    ]);
    // The disk series is unnormalized: its squared norm is (1−|ξ|²)⁻².
    assert!((doc["norm"].as_f64().unwrap() - 0.87f64.powi(-2)).abs() < 1e-12);
    assert_eq!(doc["dimension"], 200);

    let doc = json(&[
        "coherent",
        "--family",
        "indefinite-su11",
        "--n",
        "3",
        "--tau",
        "1.1",
        "--phi",
        "0.4",
    ]);
    assert!((doc["norm"].as_f64().unwrap() + 1.0).abs() < 1e-12);

    let g = json(&[
        "pullback", "--family", "su11", "--xi", "0.5", "--cutoff", "200",
    ]);
    assert!((g["metric"][0][0].as_f64().unwrap() - 8.0 / 0.5625).abs() < 1e-6);

    let closed = json(&[
        "metric",
        "--family",
        "hyperbolic",
        "--zeta",
        "0.2,0.1i",
        "--n",
        "2",
    ]);
    let potential = json(&[
        "metric",
        "--family",
        "hyperbolic",
        "--zeta",
        "0.2,0.1i",
        "--n",
        "2",
        "--potential",
    ]);
    for i in 0..4 {
        for j in 0..4 {
            let a = closed["real_form"][i][j].as_f64().unwrap();
            let b = potential["real_form"][i][j].as_f64().unwrap();
            assert!((a - b).abs() < 1e-6);
        }
    }

    let r = json(&["curvature", "--family", "hyperbolic", "--zeta", "0.3"]);
    assert!((r["scalar_curvature"].as_f64().unwrap() + 2.0).abs() < 1e-4);
    let r = json(&[
        "curvature",
        "--family",
        "suk",
        "--zeta",
        "0.2,0.1i",
        "--n",
        "2",
    ]);
    assert!((r["scalar_curvature"].as_f64().unwrap() - 3.0).abs() < 1e-3);

    let k = json(&["kernel", "--zeta", "0.5", "--terms", "300", "--metric"]);
    assert!((k["ratio_to_hyperbolic"].as_f64().unwrap() - 0.5).abs() < 1e-8);
}
