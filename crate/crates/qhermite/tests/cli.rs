//! End-to-end checks of the command-line binary: exit-code contract,
//! byte-determinism of `gen`, and spot values of the emitted polynomials.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhermite"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn gen_spot_values() {
    let out = run(&["gen", "q", "4", "--q", "1/2", "--format", "pretty"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "x^4 - 35/16*s*x^2 + 7/16*s^2"
    );

    let out = run(&["gen", "qp", "3", "--p", "3", "--q", "1/3", "--format", "pretty"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "x^3 - 4/3*s");

    let out = run(&["gen", "classical", "4", "--format", "pretty"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "x^4 - 6*s*x^2 + 3*s^2"
    );

    let out = run(&["gen", "q", "4", "--q", "1/2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"terms":[{"coeff":"7/16","s":2,"x":0},{"coeff":"-35/16","s":1,"x":2},{"coeff":"1","s":0,"x":4}]}"#
    );
}

#[test]
fn gen_is_byte_deterministic() {
    for args in [
        &["gen", "q", "10", "--q", "3/7", "--format", "json"][..],
        &["gen", "qinv", "8", "--q", "5/2", "--format", "csv"][..],
        &["gen", "qp", "9", "--p", "3", "--q", "2/3", "--format", "pretty"][..],
    ] {
        let first = run(args);
        assert_eq!(code(&first), 0, "{args:?}");
        for _ in 0..2 {
            let again = run(args);
            assert_eq!(first.stdout, again.stdout, "nondeterministic bytes for {args:?}");
        }
    }
}

#[test]
fn exit_code_contract() {
    // 0: all checks pass (paper-discrepancy rows do not fail a run)
    let out = run(&["verify", "q", "--n-max", "5", "--q", "1/2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().next().unwrap().starts_with("identity_id,params,status"));
    assert!(text.contains("paper_discrepancy"), "discrepancy rows should be reported");
    assert!(!text.contains(",fail,"), "no hard failures expected");

    let out = run(&["fourier", "thm41", "--n", "2", "--q", "0.5"]);
    assert_eq!(code(&out), 0);

    // 1: a tolerance breach
    let out = run(&["fourier", "thm41", "--n", "2", "--q", "0.5", "--tol", "1e-300"]);
    assert_eq!(code(&out), 1);

    // 2: usage errors
    assert_eq!(code(&run(&["gen", "q", "3"])), 2); // missing --q
    assert_eq!(code(&run(&["gen", "qp", "3", "--q", "1/3"])), 2); // missing --p
    assert_eq!(code(&run(&["gen", "q", "3", "--q", "0"])), 2); // q must be nonzero
    assert_eq!(code(&run(&["fourier", "thm41", "--q", "1.5"])), 2); // q outside (0,1)
    assert_eq!(code(&run(&["fourier", "thm23", "--n", "3", "--y", "0.5"])), 2); // odd n
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn verify_all_small_run_passes() {
    let out = run(&["verify", "all", "--n-max", "6", "--q", "2/3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON report array");
    let rows = rows.as_array().expect("array of reports");
    assert!(rows.len() > 20);
    for row in rows {
        let status = row["status"].as_str().unwrap();
        assert!(status == "pass" || status == "paper_discrepancy", "{row}");
    }
}

#[test]
fn fourier_documented_examples() {
    // gauss --y 0 --s 1 -> 1.0
    let out = run(&["fourier", "gauss", "--y", "0", "--s", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let lhs: f64 = text.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!((lhs - 1.0).abs() < 1e-9, "gauss transform of 1 should be 1, got {lhs}");

    // thm41 --n 1 --q 0.5 --s 1 --y 0 -> 2^{-1/4} on both sides
    let out = run(&["fourier", "thm41", "--n", "1", "--q", "0.5", "--s", "1", "--y", "0"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let want = 2.0f64.powf(-0.25);
    for v in [row[2], row[3]] {
        let v: f64 = v.parse().unwrap();
        assert!((v - want).abs() < 1e-6, "expected {want}, got {v}");
    }

    // thm23 --n 2 --s 1 (y = 0) -> zero integral within 1e-10
    let out = run(&["fourier", "thm23", "--n", "2", "--s", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let lhs: f64 = text.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!(lhs.abs() <= 1e-10, "zero-integral case should vanish, got {lhs}");
}

#[test]
fn fourier_csv_shape() {
    let out = run(&["fourier", "gauss", "--y", "0.7", "--s", "1.5"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "identity_id,params,lhs,rhs,abs_err,rel_err,pass");
    let row = lines.next().unwrap();
    assert!(row.starts_with("gauss,y=0.7;s=1.5,"));
    assert!(row.ends_with(",true"));
}
