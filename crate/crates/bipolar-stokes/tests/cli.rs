use std::process::Command;

use bipolar_stokes::cli::{main_with_args, CSV_HEADER};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bipolar-stokes").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn geometry_key_values() {
    let (code, out, _) = run(&["geometry", "--R", "1", "--delta", "0.01"]);
    assert_eq!(code, 0);
    let s: f64 = value(&out, "s").parse().unwrap();
    assert!((s - 0.010025f64.sqrt().asinh()).abs() < 1e-15);

    let (_, out, _) = run(&["geometry", "--R", "2", "--delta", "0.02"]);
    let half: f64 = value(&out, "half_gap").parse().unwrap();
    assert!((half - 0.01).abs() < 1e-12);

    let (code, _, err) = run(&["geometry", "--R", "1", "--delta", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("delta"));
}

#[test]
fn json_everywhere() {
    for args in [&["--json", "geometry"][..], &["--json", "constants"], &["--json", "coeffs", "--case", "sh"]] {
        let (code, out, _) = run(args);
        assert_eq!(code, 0);
        serde_json::from_str::<serde_json::Value>(&out).unwrap();
    }
}

#[test]
fn constants_keys() {
    let (_, out, _) = run(&["--json", "constants", "--delta", "1e-3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for k in ["I1", "I22", "I23", "Irot", "J1", "J2", "Jrot", "c21", "c22", "c23", "K_v", "K_rot", "A1", "B1", "A2", "C2", "F0", "G0"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    let c21 = v["c21"].as_f64().unwrap();
    assert!((c21 / (2.0 * 1e-3f64.powf(1.5)) - 1.0).abs() < 0.01);
    let s = (1e-3f64 * (1.0 + 2.5e-4)).sqrt().asinh();
    let i1 = -4.0 * std::f64::consts::PI / (2.0 * s - (2.0 * s).tanh());
    assert!((v["I1"].as_f64().unwrap() / i1 - 1.0).abs() < 1e-12);
    assert!((v["F0"].as_f64().unwrap() - 0.728_098_782_495_226_2).abs() < 1e-9);
}

#[test]
fn coeffs_text_table() {
    let (code, out, _) = run(&["coeffs", "--case", "ex", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "N"), "5");
    assert!(out.lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit())).count() == 5);
    let (code, _, _) = run(&["coeffs", "--n", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn field_csv_layout() {
    let args = ["field", "--background", "sh", "--xmin", "-0.5", "--xmax", "1.5", "--ymin", "-0.5", "--ymax", "0.5", "--nx", "5", "--ny", "3"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 1 + 15);
    let rows: Vec<Vec<&str>> = lines[1..].iter().map(|l| l.split(',').collect()).collect();
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.len(), 14);
        // y outer, x inner
        let (y, x): (f64, f64) = (r[1].parse().unwrap(), r[0].parse().unwrap());
        assert_eq!(y, -0.5 + 0.5 * (i / 5) as f64);
        assert_eq!(x, -0.5 + 0.5 * (i % 5) as f64);
        if r[4] == "1" {
            assert!(r[5..].iter().all(|c| c.is_empty()));
        } else {
            assert!(r[5..].iter().all(|c| c.parse::<f64>().is_ok()));
        }
    }
    // (1.0, 0.0) is inside the right cylinder
    assert_eq!(rows[5 + 3][4], "1");
    // shear stress at the origin ~ 2 sqrt(R/delta)
    let sxy: f64 = rows[5 + 1][12].parse().unwrap();
    assert!((sxy / 20.0 - 1.0).abs() < 0.05, "{sxy}");

    let (_, again, _) = run(&args);
    assert_eq!(out, again);
}

#[test]
fn field_argument_errors() {
    assert_eq!(run(&["field", "--nx", "1"]).0, 2);
    assert_eq!(run(&["field", "--xmin", "1", "--xmax", "0"]).0, 2);
    assert_eq!(run(&["field", "--a", "0", "--c", "0", "--d", "0"]).0, 4);
    assert_eq!(run(&["field", "--nx", "2", "--ny", "2", "-o", "/nonexistent-dir/f.csv"]).0, 3);
    assert_eq!(run(&["nonsense"]).0, 2);
}

#[test]
fn field_to_file() {
    let dir = std::env::temp_dir().join(format!("bipolar-stokes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.csv");
    let (code, _, _) = run(&["field", "--nx", "4", "--ny", "4", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 17);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validate_subset() {
    let (code, out, _) = run(&["validate", "--criteria", "4,12"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 2);
    assert_eq!(run(&["validate", "--criteria", "13"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_bipolar-stokes");
    let st = Command::new(bin).args(["geometry", "--delta", "-1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin).args(["field", "--nx", "3", "--ny", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).starts_with(CSV_HEADER));
}
