use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/churn_fixture.csv")
}

fn eda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eda"))
        .args(args)
        .env_remove("EDA_SEED")
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = eda(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fx() -> String {
    fixture().display().to_string()
}

#[test]
fn describe_lists_one_row_per_column() {
    let v = ok_json(&["describe", &fx()]);
    assert_eq!(v["columns"].as_array().unwrap().len(), 14);
    assert_eq!(v["rows"], 200);
}

#[test]
fn describe_column_reports_summary_fields() {
    let v = ok_json(&["describe", &fx(), "--column", "Age"]);
    for key in ["count", "mean", "median", "mode", "std", "q1", "q3", "skew_pearson"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn input_errors_exit_2() {
    let missing = eda(&["describe", "missing.csv"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());
    assert!(!missing.stderr.is_empty());
    assert_eq!(eda(&["corr", &fx(), "--method", "bogus"]).status.code(), Some(2));
    assert_eq!(eda(&["cluster", &fx(), "--algo", "kmeans", "--k", "0"]).status.code(), Some(2));
    assert_eq!(eda(&["describe", &fx(), "--column", "Nope"]).status.code(), Some(2));
    assert_eq!(eda(&["corr", &fx(), "--columns", "Age"]).status.code(), Some(2));
    assert_eq!(eda(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn corr_is_symmetric_and_writes_heatmap() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("h.svg");
    let v = ok_json(&["corr", &fx(), "--method", "pearson", "--heatmap", svg.to_str().unwrap()]);
    let m = v["values"].as_array().unwrap();
    assert_eq!(m.len(), 11);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x, &m[j][i]);
        }
    }
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(roxmltree::Document::parse(&text).is_ok());
}

#[test]
fn acf_at_lag_zero_is_one() {
    let v = ok_json(&["timeseries", &fx(), "--column", "Balance", "--op", "acf", "--max-lag", "0"]);
    assert_eq!(v, serde_json::json!([1.0]));
}

#[test]
fn pca_ratios_sum_to_one() {
    let v = ok_json(&["pca", &fx(), "--columns", "Age,CreditScore,Tenure,Balance"]);
    let s: f64 = v["model"]["explained_ratio"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .sum();
    assert!((s - 1.0).abs() <= 1e-12);
}

#[test]
fn dbscan_labels_allow_noise() {
    let v = ok_json(&[
        "cluster", &fx(), "--algo", "dbscan", "--eps", "0.5", "--min-pts", "4", "--columns", "Age,Tenure",
    ]);
    let labels = v["labels"].as_array().unwrap();
    assert_eq!(labels.len(), 200);
    assert!(labels.iter().all(|l| l.as_i64().unwrap() >= -1));
}

#[test]
fn seeded_cluster_is_reproducible_via_flag_or_env() {
    let args = ["cluster", &fx(), "--algo", "kmeans", "--k", "3", "--seed", "7", "--columns", "Age,CreditScore"];
    let (a, b) = (eda(&args), eda(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_eda"))
        .args(["cluster", &fx(), "--algo", "kmeans", "--k", "3", "--columns", "Age,CreditScore"])
        .env("EDA_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

fn write_csv_with_gaps(dir: &Path) -> PathBuf {
    let p = dir.join("gaps.csv");
    std::fs::write(&p, "Age,City\n30,Oslo\n,Rome\n50,\n40,Oslo\nNA,Rome\n").unwrap();
    p
}

#[test]
fn clean_impute_removes_nulls_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv_with_gaps(dir.path());
    let out = dir.path().join("clean.csv");
    let status = eda(&[
        "clean",
        input.to_str().unwrap(),
        "--impute",
        "Age=mean",
        "--impute",
        "City=mode",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0), "{}", String::from_utf8_lossy(&status.stderr));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "Age,City\n30,Oslo\n40,Rome\n50,Oslo\n40,Oslo\n40,Rome\n");
    let v = ok_json(&["describe", out.to_str().unwrap()]);
    assert!(v["columns"].as_array().unwrap().iter().all(|c| c["null_count"] == 0));
}

#[test]
fn clean_to_stdout_with_outlier_flags() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.csv");
    std::fs::write(&p, "v\n1\n2\n3\n4\n100\n").unwrap();
    let out = eda(&["clean", p.to_str().unwrap(), "--outliers", "v=iqr"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "v,v_outlier\n1,0\n2,0\n3,0\n4,0\n100,1\n");
    let removed = eda(&["clean", p.to_str().unwrap(), "--outliers", "v=iqr", "--outlier-action", "remove"]);
    assert_eq!(String::from_utf8(removed.stdout).unwrap(), "v\n1\n2\n3\n4\n");
}

#[test]
fn plot_kinds_write_valid_svg() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["--kind", "hist", "--column", "CreditScore"],
        &["--kind", "box", "--column", "Age"],
        &["--kind", "bar", "--column", "Geography"],
        &["--kind", "scatter", "--x", "CreditScore", "--y", "Age"],
        &["--kind", "heatmap", "--method", "spearman"],
    ];
    let f = fx();
    for (i, extra) in cases.iter().enumerate() {
        let svg = dir.path().join(format!("{i}.svg"));
        let mut args = vec!["plot", f.as_str(), "--out", svg.to_str().unwrap()];
        args.extend_from_slice(extra);
        let v = ok_json(&args);
        assert!(v["written"].is_string());
        assert!(roxmltree::Document::parse(&std::fs::read_to_string(&svg).unwrap()).is_ok(), "{extra:?}");
    }
    let out = eda(&["plot", &fx(), "--kind", "hist", "--out", dir.path().join("z.svg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn churn_report_on_fixture_is_not_evaluated() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(&["churn-report", &fx(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(v["row_count"], 200);
    assert_eq!(v["verdicts"]["NOT-EVALUATED"], 12);
    let report: Value = serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["row_count"], 200);
    let md = std::fs::read_to_string(dir.path().join("report.md")).unwrap();
    let mut linked: Vec<&str> = md.match_indices("plots/").map(|(i, _)| &md[i + 6..i + 6 + md[i + 6..].find(".svg").unwrap() + 4]).collect();
    linked.sort_unstable();
    linked.dedup();
    let mut written: Vec<String> = std::fs::read_dir(dir.path().join("plots"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    written.sort();
    assert_eq!(linked, written);
}

#[test]
fn churn_report_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let forced = eda(&["churn-report", &fx(), "--out", dir.path().to_str().unwrap(), "--findings", "always"]);
    // the synthetic fixture is not calibrated to the published figures
    assert_eq!(forced.status.code(), Some(3));
    assert!(serde_json::from_slice::<Value>(&forced.stdout).is_ok());

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "Age,Exited\n1,0\n").unwrap();
    let out = eda(&["churn-report", bad.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CreditScore"));
}
