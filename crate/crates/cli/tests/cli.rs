//! Black-box checks of the command-line interface: exit codes, report
//! schemas, and agreement between the JSON and CSV renderings.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nullity-lab"))
        .args(args)
        .output()
        .expect("spawn CLI")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn table_rows_match_independent_closed_forms() {
    let output = run(&[
        "table", "--ambient", "ch", "--family", "ch-geodesic-sphere",
        "--r-min", "0.5", "--r-max", "1.5", "--steps", "3",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["schema"], "nullity-lab/1");
    assert_eq!(report["pass"], true);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (row, r) in rows.iter().zip([0.5_f64, 1.0, 1.5]) {
        let coth = 1.0 / r.tanh();
        let closed = row["kappa_closed_form"].as_f64().unwrap();
        assert!((closed - coth * coth).abs() <= 1e-12);
        assert!(row["abs_delta"].as_f64().unwrap() <= 1e-10);
    }

    // The tube over the complex hyperbolic hyperplane tabulates tanh^2.
    let output = run(&[
        "table", "--family", "ch-tube-over-chn1", "--r", "0.8",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    let closed = report["rows"][0]["kappa_closed_form"].as_f64().unwrap();
    let tanh = 0.8_f64.tanh();
    assert!((closed - tanh * tanh).abs() <= 1e-12);

    // Families without a single closed-form column are a configuration error.
    let output = run(&[
        "table", "--family", "ch-tube-over-chk", "--n", "3", "--k", "1", "--r", "0.8",
    ]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn table_reports_failures_with_exit_one() {
    let output = run(&[
        "table", "--family", "ch-geodesic-sphere",
        "--r-min", "0.5", "--r-max", "1.5", "--steps", "3", "--tolerance", "1e-18",
    ]);
    assert_eq!(exit_code(&output), 1);
    let report = stdout_json(&output);
    assert_eq!(report["pass"], false);
}

#[test]
fn verify_distinguishes_members_from_non_members() {
    let member = run(&[
        "verify", "--family", "ch-horosphere", "--nullity", "K", "--kappa", "1.0",
    ]);
    assert_eq!(exit_code(&member), 0);
    let report = stdout_json(&member);
    assert_eq!(report["pass"], true);
    assert_eq!(report["residual"].as_f64().unwrap(), 0.0);

    let non_member = run(&[
        "verify", "--family", "ch-horosphere", "--nullity", "K", "--kappa", "0.5",
    ]);
    assert_eq!(exit_code(&non_member), 1);
    let report = stdout_json(&non_member);
    assert_eq!(report["pass"], false);
    assert!((report["residual"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
}

#[test]
fn verify_accepts_the_full_triple_on_a_projective_sphere() {
    // Classification of the model supplies alpha; the triple
    // (c/4, alpha, 0) must then verify as a (kappa, mu, nu) member.
    let classified = run(&[
        "classify", "--family", "cp-geodesic-sphere", "--n", "3", "--r", "1.0471975511965976",
    ]);
    assert_eq!(exit_code(&classified), 0);
    let alpha = stdout_json(&classified)["classification"]["alpha"].as_f64().unwrap();

    let verified = run(&[
        "verify", "--family", "cp-geodesic-sphere", "--n", "3", "--r", "1.0471975511965976",
        "--nullity", "KMN", "--kappa", "1.0", "--mu", &format!("{alpha:.17e}"), "--nu", "0.0",
    ]);
    assert_eq!(exit_code(&verified), 0, "{}", String::from_utf8_lossy(&verified.stdout));
    let report = stdout_json(&verified);
    assert_eq!(report["pass"], true);
    assert!(report["residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn csv_and_json_encode_identical_values() {
    let model: [&str; 10] = [
        "fit", "--family", "ch-tube-over-chk", "--n", "3", "--k", "1", "--r", "0.9",
        "--nullity",
    ];
    let json_run = run(&[&model[..], &["KM"]].concat());
    let csv_run = run(&[&model[..], &["KM", "--output", "csv"]].concat());
    assert_eq!(exit_code(&json_run), 0);
    assert_eq!(exit_code(&csv_run), 0);

    let report = stdout_json(&json_run);
    let csv = String::from_utf8(csv_run.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    let header: Vec<&str> = lines[0].split(',').collect();
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(header.len(), cells.len());
    let cell = |name: &str| -> &str {
        let index = header.iter().position(|h| *h == name).expect(name);
        cells[index]
    };
    for (csv_name, json_value) in [
        ("kappa", &report["fit"]["kappa"]),
        ("mu", &report["fit"]["mu"]),
        ("nu", &report["fit"]["nu"]),
        ("residual", &report["fit"]["residual"]),
        ("c", &report["c"]),
    ] {
        let from_csv: f64 = cell(csv_name).parse().unwrap();
        assert_eq!(from_csv, json_value.as_f64().unwrap(), "column {csv_name}");
    }
    assert_eq!(cell("solution_dim").parse::<u64>().unwrap(), report["fit"]["solution_dim"].as_u64().unwrap());

    // Search reports agree the same way.
    let search: [&str; 7] = ["nonhopf-search", "--nullity", "KM", "--seed", "7", "--count", "2000"];
    let json_run = run(&search);
    let csv_run = run(&[&search[..], &["--output", "csv"]].concat());
    let report = stdout_json(&json_run);
    let csv = String::from_utf8(csv_run.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    let header: Vec<&str> = lines[0].split(',').collect();
    let cells: Vec<&str> = lines[1].split(',').collect();
    let cell = |name: &str| -> &str {
        let index = header.iter().position(|h| *h == name).expect(name);
        cells[index]
    };
    for (csv_name, json_value) in [
        ("min_residual", &report["outcome"]["min_residual"]),
        ("analytic_lower_bound", &report["outcome"]["analytic_lower_bound"]),
        ("argmin_beta", &report["outcome"]["argmin"]["beta"]),
    ] {
        let from_csv: f64 = cell(csv_name).parse().unwrap();
        assert_eq!(from_csv, json_value.as_f64().unwrap(), "column {csv_name}");
    }
}

#[test]
fn configuration_errors_exit_two_with_an_error_object() {
    // Flat ambient space.
    let output = run(&["nonhopf-search", "--c", "0", "--nullity", "K"]);
    assert_eq!(exit_code(&output), 2);
    let report = stdout_json(&output);
    assert_eq!(report["schema"], "nullity-lab/1");
    assert!(report["error"].as_str().unwrap().contains("nonzero"));

    // Contradictory sign flags.
    let output = run(&["nonhopf-search", "--ambient", "cp", "--c", "-4", "--nullity", "K"]);
    assert_eq!(exit_code(&output), 2);

    // Radius outside the projective range.
    let output = run(&["classify", "--family", "cp-geodesic-sphere", "--r", "2.0"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stdout_json(&output)["error"].is_string());

    // Tube without its sub-space dimension.
    let output = run(&["fit", "--family", "ch-tube-over-chk", "--n", "3", "--r", "0.9", "--nullity", "K"]);
    assert_eq!(exit_code(&output), 2);

    // Unknown family is a usage error straight from the parser.
    let output = run(&["table", "--family", "no-such-family", "--r", "1.0"]);
    assert_eq!(exit_code(&output), 2);
}
