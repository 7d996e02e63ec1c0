//! End-to-end tests of the `radon` binary: printed values, exit codes,
//! CSV/manifest output, and byte-level determinism.

use std::process::Command;

fn radon() -> Command {
    Command::new(env!("CARGO_BIN_EXE_radon"))
}

#[test]
fn dual_prints_literature_value() {
    let out = radon()
        .args([
            "dual",
            "--n",
            "3",
            "--phi",
            "builtin:abs_t_theta2",
            "--line",
            "e1,e2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let value: f64 = text.trim().parse().unwrap();
    assert!((value - 0.5).abs() < 1e-4, "value={value}");
}

#[test]
fn forward_prints_closed_form() {
    let out = radon()
        .args([
            "forward",
            "--n",
            "4",
            "--f",
            "builtin:gaussian",
            "--theta",
            "e1",
            "--t",
            "1.0",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    let expected = std::f64::consts::PI * (-1.0f64).exp();
    assert!((value - expected).abs() < 1e-6, "value={value}");
}

#[test]
fn selftest_n3_passes() {
    let out = radon().args(["selftest", "--n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("selftest emits JSON");
    assert_eq!(report["failed"], 0);
    assert!(report["passed"].as_u64().unwrap() >= 10);
    // Every entry carries a provenance tag.
    for case in report["cases"].as_array().unwrap() {
        assert!(case["provenance"]["kind"].is_string());
    }
}

#[test]
fn csv_output_is_deterministic() {
    let dir1 = std::env::temp_dir().join("radon_cli_det_1");
    let dir2 = std::env::temp_dir().join("radon_cli_det_2");
    for dir in [&dir1, &dir2] {
        let _ = std::fs::remove_dir_all(dir);
        let out = radon()
            .args([
                "forward",
                "--n",
                "3",
                "--f",
                "builtin:gaussian",
                "--theta",
                "e2",
                "--t-count",
                "5",
                "--t-max",
                "2.0",
                "--out",
                dir.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a = std::fs::read(dir1.join("forward.csv")).unwrap();
    let b = std::fs::read(dir2.join("forward.csv")).unwrap();
    assert_eq!(a, b, "identical config must give byte-identical CSV");

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir1.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["format_version"], 1);
    assert_eq!(manifest["command"]["Forward"]["t_count"], 5);
    assert!(dir1.join("forward.schema.json").exists());
}

#[test]
fn config_error_exits_one() {
    let out = radon()
        .args(["dual", "--n", "3", "--phi", "builtin:nope", "--line", "e1,e2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = radon().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn domain_error_exits_two_with_name() {
    // A hyperplane through the origin has no quasi-orthogonal image.
    let out = radon()
        .args([
            "invert-kelvin",
            "--n",
            "3",
            "--phi",
            "builtin:kelvin_pair",
            "--hyperplane",
            "e1;0.0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("OriginPlane"), "stderr: {err}");
}

#[test]
fn funk_subcommand_values() {
    // F[w3^2](e3) = 0 and F[w3^2](e1) = 1/2 for n = 3.
    let out = radon()
        .args(["funk", "--n", "3", "--f", "builtin:omega_n_sq", "--theta", "e1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!((value - 0.5).abs() < 1e-10, "value={value}");
}

#[test]
fn ek_subcommand_gaussian_fixed_point() {
    let out = radon()
        .args([
            "ek",
            "--profile",
            "builtin:gaussian",
            "--alpha",
            "1.5",
            "--side",
            "minus",
            "--t",
            "1.1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!((value - (-1.21f64).exp()).abs() < 1e-8, "value={value}");
}
