use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn splitwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn time_zero_is_a_single_row() {
    let out = splitwalk(&[
        "simulate", "--theta", "pi/3", "--alpha", "1+0i", "--beta", "0+0i", "--time", "0",
    ]);
    assert_eq!(stdout(&out), "x,probability\n0,1\n");
    // 0.7071067811865476² rounds up, so the default coin is 1 only to an ulp
    let r = rows(&stdout(&splitwalk(&[
        "simulate", "--theta", "pi/3", "--time", "0",
    ])));
    assert_eq!(r.len(), 1);
    assert!(r[0][0] == 0.0 && (r[0][1] - 1.0).abs() <= 1e-15);
}

#[test]
fn one_step_rows() {
    let out = splitwalk(&[
        "simulate", "--theta", "pi/3", "--alpha", "1+0i", "--beta", "0+0i", "--time", "1",
    ]);
    let got = rows(&stdout(&out));
    let want = [[-1.0, 0.1875], [0.0, 0.0625], [1.0, 0.1875], [2.0, 0.5625]];
    assert_eq!(got.len(), 4);
    for (g, w) in got.iter().zip(want) {
        assert_eq!(g[0], w[0]);
        assert!((g[1] - w[1]).abs() <= 1e-15);
    }
}

#[test]
fn rounded_symmetric_coin_sums_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("sim.csv");
    let out = splitwalk(&[
        "simulate",
        "--theta",
        "pi/3",
        "--alpha",
        "0.70710678+0i",
        "--beta",
        "0+0.70710678i",
        "--time",
        "500",
        "--out",
        data.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&data).unwrap();
    assert!(text.starts_with("x,probability\n") && !text.contains('\r'));
    let xs: Vec<f64> = rows(&text).iter().map(|r| r[0]).collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
    let total: f64 = rows(&text).iter().map(|r| r[1]).sum();
    assert!((total - 1.0).abs() <= 1e-12, "{total}");

    let manifest: Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("sim.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["command"], "simulate");
    assert_eq!(manifest["theta"], std::f64::consts::PI / 3.0);
    assert_eq!(manifest["time"], 500);
    assert!(manifest["alpha"].as_array().unwrap().len() == 2);
    assert!(manifest
        .as_object()
        .unwrap()
        .values()
        .all(|v| !v.is_object()));
}

#[test]
fn density_grid_mass() {
    let out = splitwalk(&["density", "--theta", "pi/3", "--grid", "20001"]);
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 20001);
    let trap: f64 = r
        .windows(2)
        .map(|w| 0.5 * (w[0][1] + w[1][1]) * (w[1][0] - w[0][0]))
        .sum();
    assert!((trap - 1.0).abs() <= 1e-3, "{trap}");
    assert!(r.iter().all(|row| row[1].is_finite() && row[1] >= 0.0));
}

#[test]
fn spectrum_quarter_row() {
    assert_eq!(
        rows(&stdout(&splitwalk(&[
            "spectrum", "--theta", "pi/3", "--grid", "4"
        ])))
        .len(),
        4
    );
    // two cells put the first midpoint at k = π/4
    let out = splitwalk(&["spectrum", "--theta", "pi/3", "--grid", "2"]);
    let r = rows(&stdout(&out));
    assert!((r[0][0] - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    assert!((r[0][1] - 0.375).abs() < 1e-12);
    assert!((r[0][2].abs() - 55f64.sqrt() / 8.0).abs() < 1e-12);
    assert!((r[0][2] + r[0][4]).abs() < 1e-15);
}

#[test]
fn moments_defaults_and_times() {
    let out = splitwalk(&[
        "moments", "--theta", "pi/3", "--times", "100,500", "--orders", "0,2",
    ]);
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 4);
    assert!((r[0][2] - 1.0).abs() < 1e-12 && (r[0][3] - 1.0).abs() < 1e-10);
    assert!((r[3][2] - r[3][3]).abs() < (r[1][2] - r[1][3]).abs());
    let out = splitwalk(&["moments", "--theta", "pi/3", "--time", "10"]);
    assert_eq!(rows(&stdout(&out)).len(), 5);
}

#[test]
fn compare_reports_total_variation() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("cmp.csv");
    let out = splitwalk(&[
        "compare",
        "--theta",
        "pi/3",
        "--time",
        "20",
        "--out",
        data.to_str().unwrap(),
    ]);
    let line = stdout(&out);
    let tv: f64 = line
        .trim()
        .strip_prefix("total_variation=")
        .unwrap()
        .parse()
        .unwrap();
    assert!((0.0..=1.0).contains(&tv));
    assert_eq!(rows(&fs::read_to_string(&data).unwrap()).len(), 81);

    let piped = splitwalk(&["compare", "--theta", "pi/3", "--time", "20"]);
    assert!(stdout(&piped).starts_with("x,p_simulated,p_limit_approx\n"));
    assert!(String::from_utf8_lossy(&piped.stderr).contains("total_variation="));
}

#[test]
fn json_format() {
    let out = splitwalk(&[
        "simulate", "--theta", "pi/4", "--time", "2", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let total: f64 = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["probability"].as_f64().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-14);
}

#[test]
fn replay_reproduces_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    let out = splitwalk(&[
        "density",
        "--theta",
        "2pi/5",
        "--alpha",
        "0.6+0.8i",
        "--beta",
        "0+0i",
        "--grid",
        "301",
        "--out",
        first.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let manifest = dir.path().join("a.csv.manifest.json");
    let out = splitwalk(&[
        "replay",
        "--manifest",
        manifest.to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    assert!(Path::new(&dir.path().join("b.csv.manifest.json")).exists());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| splitwalk(args).status.code();
    assert_eq!(code(&["simulate", "--theta", "pi", "--time", "1"]), Some(2));
    assert_eq!(
        code(&["simulate", "--theta", "banana", "--time", "1"]),
        Some(2)
    );
    assert_eq!(code(&["density", "--theta", "0"]), Some(2));
    assert_eq!(code(&["density", "--theta", "pi/2"]), Some(2));
    assert_eq!(
        code(&["simulate", "--theta", "pi/3", "--alpha", "1+0i", "--beta", "1+0i", "--time", "1"]),
        Some(2)
    );
    assert_eq!(code(&["simulate", "--theta", "pi/3"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(
        code(&[
            "simulate",
            "--theta",
            "pi/3",
            "--time",
            "1",
            "--out",
            "/nonexistent-dir/x.csv"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&["replay", "--manifest", "/nonexistent-dir/m.json"]),
        Some(1)
    );

    let stderr = String::from_utf8(splitwalk(&["density", "--theta", "0"]).stderr).unwrap();
    assert!(stderr.contains("excluded"), "{stderr}");
}
