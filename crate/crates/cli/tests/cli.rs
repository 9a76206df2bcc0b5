use std::process::{Command, Output};

use serde_json::Value;

fn slater_hf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slater-hf")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn run_helium_text() {
    let out = slater_hf(&["run", "--z", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1.68750"), "{text}");
    assert!(text.contains("-2.84766"));
}

#[test]
fn out_of_range_z_is_usage_error() {
    let out = slater_hf(&["run", "--z", "11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_samples_is_usage_error() {
    assert_eq!(slater_hf(&["verify", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn unknown_format_is_usage_error() {
    let out = slater_hf(&["compare", "--z", "2", "--format", "xml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("xml"));
}

#[test]
fn verify_is_byte_identical() {
    let a = slater_hf(&["verify", "--samples", "1", "--seed", "9"]);
    let b = slater_hf(&["verify", "--samples", "1", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("PASS"));
}

#[test]
fn run_json_is_deterministic() {
    let args = ["run", "--z", "3", "--z", "5", "--format", "json"];
    let a = slater_hf(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, slater_hf(&args).stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    let zs: Vec<u64> = doc["rows"].as_array().unwrap().iter().map(|r| r["z"].as_u64().unwrap()).collect();
    assert_eq!(zs, vec![3, 5]);
}

#[test]
fn non_convergence_exits_nonzero() {
    let out = slater_hf(&["run", "--z", "10", "--max-evals", "20", "--restarts", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Ne"));
}

#[test]
fn compare_and_plot_data_from_saved_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let plot = dir.path().join("plot.csv");
    let report_s = report.to_str().unwrap();
    assert!(slater_hf(&["run", "--format", "json", "--output", report_s]).status.success());

    let csv = slater_hf(&["compare", "--input", report_s, "--format", "csv"]);
    assert!(csv.status.success());
    let csv = stdout(&csv);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "Z,symbol,configuration,alpha,beta,gamma,E_calc,E_paper,E_bestHF,E_exact");
    assert_eq!(lines.len(), 10);
    assert!(lines[9].starts_with("10,Ne,"));
    assert!(lines[9].ends_with(",-126.971,-128.547,-128.830462"), "{}", lines[9]);

    assert!(slater_hf(&["plot-data", "--input", report_s, "--output", plot.to_str().unwrap()]).status.success());
    let plot = std::fs::read_to_string(&plot).unwrap();
    let rows: Vec<Vec<&str>> = plot.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.len() == 4));
    let energies: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(energies.windows(2).all(|w| w[1] < w[0]));
    for (row, line) in rows.iter().zip(&lines[1..]) {
        let c: Vec<&str> = line.split(',').collect();
        assert_eq!(row, &vec![c[0], c[6], c[8], c[9]]);
    }

    let text = stdout(&slater_hf(&["compare", "--input", report_s]));
    assert!(text.contains("within 1%"));
    assert!(text.contains("best-HF entry not below E_paper"));
}

#[test]
fn monopole_run_matches_published_neon() {
    let out = slater_hf(&["compare", "--z", "10", "--p-shell", "monopole", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("10,Ne,1s^2 2s^2 2p^6 ^1S,9.71176,3.59108,2.81404,-126.971,"), "{row}");
}

#[test]
fn unwritable_output_fails() {
    let out = slater_hf(&["plot-data", "--z", "2", "--output", "/nonexistent/dir/plot.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn malformed_input_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"rows\": 3}").unwrap();
    let out = slater_hf(&["compare", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
