use std::io::Write;
use std::process::{Command, Output};

fn qbiu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbiu"))
        .args(args)
        .env_remove("QBIU_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_bounds_half_plane_values() {
    let o = qbiu(&[
        "eval-bounds", "--family", "M", "--lambda", "0", "--q", "0.9", "--k", "0",
        "--beta", "0", "--tau", "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,lambda_mu,q,k,target_kind,target_param,quantity,tau_re,tau_im,bound,observed_max,dominated,degenerate"
    );
    // k = 0 collapses the operator, so these are the classical values.
    assert!(text.contains(",a2,,,1.4142135623730951,"));
    assert!(text.contains(",a3,,,5.0,"));
    assert!(text.contains(",fs,1.0,0.0,1.0,"));
}

#[test]
fn probe_dominates_and_is_deterministic() {
    let args = [
        "probe", "--family", "F", "--mu", "0.5", "--q", "0.6", "--k", "1",
        "--alpha", "0.5", "--grid-step", "0.25", "--tau", "0", "--tau", "1", "--seed", "5",
    ];
    let a = qbiu(&args);
    let b = qbiu(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout, "same config must give byte-identical output");
    for line in stdout(&a).lines().skip(1) {
        assert!(line.contains(",true,false"), "not dominated: {line}");
    }
}

#[test]
fn probe_with_wrong_exponent_exits_3() {
    let o = qbiu(&[
        "probe", "--family", "M", "--lambda", "0.5", "--q", "0.5", "--k", "1",
        "--alpha", "0.5", "--grid-step", "0.5", "--bracket-exponent", "k",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn membership_passes_identity_and_fails_escape() {
    let o = qbiu(&[
        "check-membership", "--family", "M", "--lambda", "0", "--q", "0.5", "--k", "0",
        "--beta", "0",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(",membership,"));
    assert!(stdout(&o).contains(",true,"));

    let o = qbiu(&[
        "check-membership", "--family", "M", "--lambda", "0", "--q", "0.5", "--k", "0",
        "--beta", "0", "--coeffs", "0.9",
    ]);
    assert!(o.status.success(), "failing membership is still a clean run");
    assert!(stdout(&o).contains(",false,"));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("worst margin"), "witness missing: {err}");
}

#[test]
fn membership_on_custom_target_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("target.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "1.0\n0.5\n0.25").unwrap();

    let o = qbiu(&[
        "check-membership", "--family", "F", "--mu", "0", "--q", "0.5", "--k", "0",
        "--series-file", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));

    // Bounds need only the target coefficients, so eval still works.
    let o = qbiu(&[
        "eval-bounds", "--family", "F", "--mu", "0", "--q", "0.5", "--k", "0",
        "--series-file", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("custom"));
}

#[test]
fn limit_scan_reaches_classical_values() {
    let o = qbiu(&[
        "limit-scan", "--family", "F", "--mu", "1", "--q", "0.5", "--beta", "0",
        "--q-ladder", "0.5,0.99999999", "--format", "json",
    ]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    let last_a2 = rows
        .iter()
        .rfind(|r| r["quantity"] == "a2")
        .unwrap();
    let want = (2.0f64 / 3.0).sqrt();
    assert!((last_a2["bound"].as_f64().unwrap() - want).abs() < 1e-5);
    let last_b3 = rows
        .iter()
        .rfind(|r| r["quantity"] == "bracket3")
        .unwrap();
    assert!((last_b3["bound"].as_f64().unwrap() - 3.0).abs() < 1e-5);
}

#[test]
fn config_file_fills_in_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(
        &path,
        "family = \"M\"\nlambda = 0.0\nq = 0.9\nk = 0\nbeta = 0.0\ntau = [\"1\"]\n",
    )
    .unwrap();

    let from_config = qbiu(&["eval-bounds", "--config", path.to_str().unwrap()]);
    assert!(from_config.status.success());
    let from_flags = qbiu(&[
        "eval-bounds", "--family", "M", "--lambda", "0", "--q", "0.9", "--k", "0",
        "--beta", "0", "--tau", "1",
    ]);
    assert_eq!(from_config.stdout, from_flags.stdout);

    // A flag must beat the file.
    let overridden = qbiu(&[
        "eval-bounds", "--config", path.to_str().unwrap(), "--q", "0.3",
    ]);
    assert!(overridden.status.success());
    assert!(stdout(&overridden).contains(",0.3,0,"));
}

#[test]
fn bad_ranges_exit_2() {
    for args in [
        vec!["eval-bounds", "--family", "M", "--lambda", "1.5", "--q", "0.9", "--beta", "0"],
        vec!["eval-bounds", "--family", "M", "--lambda", "0", "--q", "1.2", "--beta", "0"],
        vec!["eval-bounds", "--family", "M", "--lambda", "0", "--q", "0.9"],
        vec!["eval-bounds", "--family", "M", "--mu", "0.5", "--q", "0.9", "--beta", "0"],
        vec!["limit-scan", "--family", "M", "--lambda", "0", "--q", "0.9", "--k", "2", "--beta", "0"],
    ] {
        let o = qbiu(&args);
        assert_eq!(o.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = qbiu(&[
        "eval-bounds", "--family", "M", "--lambda", "0", "--q", "0.9", "--k", "0",
        "--beta", "0", "--output", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("family,lambda_mu,"));
}
