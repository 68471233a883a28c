//! End-to-end checks of the command-line interface: exit codes, output
//! determinism, file emission and data ingestion.

use std::process::{Command, Output};

fn heatinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heatinv"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_a_reports_estimate_and_error() {
    let out = heatinv(&["solve-a", "--c", "0.017699", "--scheme", "perfect-match"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("scheme=perfect-match"), "{text}");
    // a = D0-true * 4T/L^2 for the first moisture record
    let a_line = text
        .lines()
        .find(|l| l.starts_with("a="))
        .expect("a= line");
    let a: f64 = a_line[2..].parse().unwrap();
    assert!((a - 0.0729612).abs() < 1e-4, "a = {a}");
    let re_line = text
        .lines()
        .find(|l| l.starts_with("re_percent="))
        .unwrap();
    let re: f64 = re_line["re_percent=".len()..].parse().unwrap();
    assert!(re < 0.0005, "re = {re}");
}

#[test]
fn solve_a_oracle_value() {
    let out = heatinv(&["solve-a", "--c", "0.5", "--scheme", "oracle"]);
    let text = stdout(&out);
    let a: f64 = text
        .lines()
        .find(|l| l.starts_with("a="))
        .map(|l| l[2..].parse().unwrap())
        .unwrap();
    assert!((a - 0.378748).abs() < 1e-5, "a = {a}");
}

#[test]
fn exit_codes() {
    // domain error: c outside (0,1)
    assert_eq!(heatinv(&["solve-a", "--c", "1.5"]).status.code(), Some(2));
    // domain error: p-expansion outside its validity
    assert_eq!(
        heatinv(&["solve-a", "--c", "0.6", "--scheme", "p-expansion"])
            .status
            .code(),
        Some(2)
    );
    // usage errors
    assert_eq!(heatinv(&["solve-a"]).status.code(), Some(64));
    assert_eq!(heatinv(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        heatinv(&["solve-a", "--c", "0.5", "--scheme", "bogus"])
            .status
            .code(),
        Some(2)
    );
    // help and version are not failures
    assert_eq!(heatinv(&["--help"]).status.code(), Some(0));
    assert_eq!(heatinv(&["--version"]).status.code(), Some(0));
}

#[test]
fn forward_drainage_boundary() {
    let out = heatinv(&[
        "forward",
        "--problem",
        "drainage",
        "--x",
        "0",
        "--t",
        "2",
        "--h0",
        "1.57",
        "--d",
        "3.4",
        "--diffusion",
        "48",
        "--half-spacing",
        "18.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let h: f64 = text.trim().strip_prefix("h=").unwrap().parse().unwrap();
    assert!((h - 3.4).abs() < 1e-6, "h = {h}");
}

#[test]
fn inverse_problem_commands() {
    // diffusivity from the first moisture record, near-exact scheme
    let out = heatinv(&[
        "diffusivity",
        "--theta0",
        "0.05",
        "--theta1",
        "0.4",
        "--theta",
        "0.053097",
        "--length",
        "100",
        "--t",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let d0: f64 = stdout(&out)
        .trim()
        .strip_prefix("diffusivity_cm2_h=")
        .unwrap()
        .parse()
        .unwrap();
    assert!((d0 - 1.82403).abs() < 1e-4, "d0 = {d0}");

    // spacing via the conductivity route (A = K B / S_y with B = d + h0/2)
    let out = heatinv(&[
        "drain-spacing",
        "--h0",
        "1.57",
        "--height",
        "1.38",
        "--t",
        "1",
        "--k",
        "0.699145",
        "--sy",
        "0.060008",
        "--b",
        "4.2",
        "--scheme",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let two_l: f64 = stdout(&out)
        .trim()
        .strip_prefix("spacing_2l_m=")
        .unwrap()
        .parse()
        .unwrap();
    // 2L = 2 sqrt(A T / a_true(0.121019...))
    let a_coef: f64 = 0.699145 * 4.2 / 0.060008;
    let expected = 2.0 * (a_coef / 0.14189).sqrt();
    assert!((two_l - expected).abs() < 0.01, "2L = {two_l} vs {expected}");

    // inadmissible height
    let out = heatinv(&[
        "drain-time",
        "--h0",
        "1.57",
        "--height",
        "1.6",
        "--spacing",
        "43",
        "--diffusion",
        "40",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn error_curve_writes_deterministic_csv() {
    let dir = std::env::temp_dir().join(format!("heatinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path_a = dir.join("curve_a.csv");
    let path_b = dir.join("curve_b.csv");
    for path in [&path_a, &path_b] {
        let out = heatinv(&[
            "error-curve",
            "--scheme",
            "explicit-2",
            "--grid",
            "25",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert_eq!(a, b, "identical invocations must be byte-identical");
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap().trim_end(),
        "c,a_estimate,c_reconstructed,re_percent"
    );
    assert_eq!(lines.filter(|l| !l.trim().is_empty()).count(), 25);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn error_curve_records_per_point_failures() {
    // p-expansion leaves its domain past c ~ 0.415: rows must stay in place
    // with empty numeric fields rather than aborting the sweep
    let out = heatinv(&["error-curve", "--scheme", "p-expansion", "--grid", "9", "--c-min", "0.1", "--c-max", "0.9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows[0].matches(',').count() == 3 && !rows[0].ends_with(",,,"));
    assert!(rows[8].trim_end().ends_with(",,,"), "{}", rows[8]);
}

#[test]
fn simulate_is_seed_deterministic() {
    let run = || {
        stdout(&heatinv(&[
            "simulate", "--seed", "7", "--n", "4", "--times", "100,200,400,800",
        ]))
    };
    let a = run();
    assert_eq!(a, run());
    let different = stdout(&heatinv(&[
        "simulate", "--seed", "8", "--n", "4", "--times", "100,200,400,800",
    ]));
    assert_ne!(a, different);
    assert!(a.starts_with("index,T_h,theta0,theta1,Theta,L_cm,D0_true"));
    assert_eq!(a.lines().count(), 5);
}

#[test]
fn table_ids_and_validation() {
    for id in ["1", "2", "3", "4"] {
        let out = heatinv(&["table", "--id", id]);
        assert_eq!(out.status.code(), Some(0), "table {id}");
        assert!(stdout(&out).lines().count() >= 4);
    }
    assert_eq!(heatinv(&["table", "--id", "7"]).status.code(), Some(2));
}

#[test]
fn table_accepts_custom_field_data() {
    let dir = std::env::temp_dir().join(format!("heatinv-data-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("field.csv");
    std::fs::write(
        &path,
        "T_days,H_minus_d_m,S_y,K_m_per_day\n2,1.32,0.068582,0.618233\n5,1.20,0.088337,0.514509\n",
    )
    .unwrap();
    let out = heatinv(&[
        "table",
        "--id",
        "2",
        "--data",
        path.to_str().unwrap(),
        "--h0",
        "1.57",
        "--d",
        "3.4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    // c1 of the first record
    assert!(text.lines().nth(1).unwrap().contains("0.15924"), "{text}");

    // --data without --h0 is a domain error; wrong header is rejected
    let out = heatinv(&["table", "--id", "2", "--data", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&path, "T,H,S,K\n1,1,1,1\n").unwrap();
    let out = heatinv(&[
        "table", "--id", "2", "--data", path.to_str().unwrap(), "--h0", "1.57",
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_file_merges_under_flags() {
    let dir = std::env::temp_dir().join(format!("heatinv-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "scheme=log-log\ndigits=4\n").unwrap();
    // scheme and digits come from the file
    let from_cfg = stdout(&heatinv(&[
        "solve-a", "--c", "0.1", "--config", cfg.to_str().unwrap(),
    ]));
    assert!(from_cfg.contains("scheme=log-log"), "{from_cfg}");
    // explicit flag wins over the file
    let flagged = stdout(&heatinv(&[
        "solve-a", "--c", "0.1", "--scheme", "inv-erfc", "--config", cfg.to_str().unwrap(),
    ]));
    assert!(flagged.contains("scheme=inv-erfc"), "{flagged}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn threshold_table_matches_reference_orders() {
    let out = stdout(&heatinv(&["table", "--id", "1"]));
    let rows: Vec<&str> = out.lines().skip(1).filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(rows.len(), 4);
    // N, M, c_min, a_min with the documented pairs
    let expect = [
        (0, 0, 0.531, 0.405),
        (1, 1, 0.316, 0.251),
        (2, 3, 0.172, 0.169),
        (3, 6, 0.102, 0.131),
    ];
    for (row, (n, m, c_min, a_min)) in rows.iter().zip(expect) {
        let f: Vec<f64> = row
            .trim_end()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(f[0] as i32, n);
        assert_eq!(f[1] as i32, m);
        assert!(
            (f[2] - c_min).abs() < 1.5e-3,
            "N={n}: c_min {} vs {c_min}",
            f[2]
        );
        assert!((f[3] - a_min).abs() < 2e-3, "N={n}: a_min {} vs {a_min}", f[3]);
    }
}
