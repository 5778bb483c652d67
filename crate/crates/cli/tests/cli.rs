use std::process::{Command, Output};

use diffeo_core::Series;

fn diffeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bn_closed() {
    let o = diffeo(&["bn", "--n", "3", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "12*a1^2 - 6*a2\n");
}

#[test]
fn bn_methods_agree() {
    let want = stdout(&diffeo(&["bn", "--n", "4", "--method", "inverse"]));
    for m in ["direct", "recurrence", "closed"] {
        let o = diffeo(&[
            "bn", "--n", "4", "--method", m, "--trials", "3", "--seed", "5",
        ]);
        assert_eq!(stdout(&o), want, "method {m}");
    }
}

#[test]
fn bn_json_schema() {
    let o = diffeo(&[
        "--json", "bn", "--n", "2", "--method", "direct", "--trials", "4",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["method"], "direct");
    assert_eq!(v["poly"], "-2*a1");
    assert_eq!(v["trials"], 4);
    assert_eq!(v["point_independent"], true);
}

#[test]
fn numeric_coefficients() {
    let o = diffeo(&["bn", "--n", "3", "--coeffs", "a1=1/2,a2=0"]);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn bell_evaluation() {
    assert_eq!(
        stdout(&diffeo(&["bell", "--n", "3", "--k", "2"])),
        "3*x1*x2\n"
    );
    assert_eq!(
        stdout(&diffeo(&[
            "bell", "--n", "5", "--k", "2", "--subst", "stirling"
        ])),
        "15\n"
    );
    assert_eq!(
        stdout(&diffeo(&[
            "bell", "--n", "2", "--k", "1", "--subst", "closed"
        ])),
        "-2*a2\n"
    );
    assert_eq!(
        stdout(&diffeo(&[
            "bell", "--n", "4", "--k", "3", "--subst", "smatrix"
        ])),
        "12*a1\n"
    );
}

#[test]
fn bell_verify_suites() {
    for suite in ["genfunc", "localization", "starter", "cvijovic", "oracle"] {
        let o = diffeo(&["bell", "verify", "--suite", suite, "--nmax", "6"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        assert!(stdout(&o).contains("checks passed"));
    }
    let o = diffeo(&["bell", "verify", "--suite", "ode"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_round_trips() {
    for what in ["diffeo", "inverse", "p", "q", "legendre", "action"] {
        let o = diffeo(&["export", "--what", what, "--order", "5"]);
        assert_eq!(o.status.code(), Some(0), "{what}");
        let text = stdout(&o);
        let s = Series::from_json(&text).unwrap();
        assert_eq!(s.order(), 5);
        let again: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(
            again,
            serde_json::from_str::<serde_json::Value>(&text).unwrap()
        );
    }
}

#[test]
fn inverse_lists_b() {
    let text = stdout(&diffeo(&["inverse", "--order", "3"]));
    assert_eq!(text, "b_1 = 1\nb_2 = -2*a1\nb_3 = 12*a1^2 - 6*a2\n");
}

#[test]
fn verify_json_and_determinism() {
    let args = [
        "--json", "verify", "--suite", "all", "--order", "4", "--trials", "3", "--seed", "7",
    ];
    let a = diffeo(&args);
    let b = diffeo(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["failed"], 0);
    let reports: Vec<diffeo_core::Report> = serde_json::from_value(v["reports"].clone()).unwrap();
    assert!(reports.iter().all(|r| r.all_passed()));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = [
        "verify",
        "--suite",
        "amplitudes",
        "--order",
        "4",
        "--trials",
        "4",
        "--seed",
        "3",
    ];
    let capped = Command::new(env!("CARGO_BIN_EXE_diffeo"))
        .args(args)
        .env("DIFFEO_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(0));
    assert_eq!(capped.stdout, diffeo(&args).stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_diffeo"))
        .args(args)
        .env("DIFFEO_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file() {
    let dir = std::env::temp_dir().join(format!("diffeo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(
        &path,
        r#"{"order": 3, "suite": "legendre", "output": "json", "coeffs": {"a1": "2"}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();

    let o = diffeo(&["--config", p, "verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reports"][0]["suite"], "legendre");

    // flags win over the file
    let o = diffeo(&["--config", p, "inverse", "--order", "2"]);
    let s = Series::from_json(&stdout(&o)).unwrap();
    assert_eq!(s.coeff(2).unwrap().to_string(), "-4");

    std::fs::write(&path, r#"{"order": 0}"#).unwrap();
    assert_eq!(diffeo(&["--config", p, "inverse"]).status.code(), Some(2));
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(diffeo(&["--config", p, "inverse"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors() {
    assert_eq!(diffeo(&[]).status.code(), Some(2));
    assert_eq!(diffeo(&["bn"]).status.code(), Some(2));
    assert_eq!(
        diffeo(&["bn", "--n", "2", "--method", "magic"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(diffeo(&["bell", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        diffeo(&["bell", "--n", "2", "--k", "1", "--subst", "a1=2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(diffeo(&["smatrix", "--s", "2"]).status.code(), Some(2));
    assert_eq!(
        diffeo(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn legendre_and_smatrix_pass() {
    let o = diffeo(&["legendre", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("L_0 = 0\nL_1 = 0\nL_2 = 1\nL_3 = -2*a1\n"));
    let o = diffeo(&["--json", "smatrix", "--order", "5", "--s", "3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["values"].as_array().unwrap().len(), 10);
    assert_eq!(v["values"][2]["W"], "l3");
}
