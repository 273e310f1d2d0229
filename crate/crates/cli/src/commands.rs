use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use eda_core::assoc::{correlation_matrix, correlation_matrix_of};
use eda_core::cleanse::{
    bin, detect_outliers, encode, handle_outliers, impute, transform, BinningSpec, EncodeKind,
    FillValue, HandledOutliers, ImputeStrategy, OutlierAction, OutlierMethod, TransformKind,
};
use eda_core::cluster::{
    agglomerative, cut, dbscan, gmm, gmm_predict, kmeans, CovarianceType, GmmParams, KMeansParams,
};
use eda_core::reduce::{fit_pca_with, PcaOptions};
use eda_core::report::{
    churn_csv_options, churn_pipeline, render_report, EvaluationMode, FindingsConfig, ReportFormat,
    Verdict,
};
use eda_core::stats::{histogram, summarize, BinSpec};
use eda_core::table::{null_counts, read_csv, value_counts, write_csv};
use eda_core::timeseries::{
    acf, cumulative_sum, decompose_additive, difference, exp_smoothing, moving_average, pacf,
    stationarity_check,
};
use eda_core::viz::{plot_bar, plot_box, plot_heatmap, plot_histogram, plot_scatter};
use eda_core::{ColumnKind, CsvOptions, Matrix, Table, TimeSeries};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;

/// How a successful command ended.
pub enum Outcome {
    Done,
    FindingsFailed,
}

fn load(input: &Input) -> Result<Table> {
    let delimiter = u8::try_from(input.delimiter)
        .ok()
        .filter(u8::is_ascii)
        .ok_or_else(|| anyhow!("delimiter must be a single ASCII character"))?;
    let options = CsvOptions {
        delimiter,
        boolean_columns: input.boolean_columns.clone(),
        ..CsvOptions::default()
    };
    read_csv(&input.csv, &options).with_context(|| format!("reading {}", input.csv.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

/// Selected feature columns, or every numeric and boolean column.
fn features(t: &Table, columns: &[String]) -> Vec<String> {
    if columns.is_empty() {
        t.numeric_like_columns().into_iter().map(String::from).collect()
    } else {
        columns.to_vec()
    }
}

fn feature_matrix(t: &Table, columns: &[String]) -> Result<(Vec<String>, Matrix)> {
    let names = features(t, columns);
    if names.is_empty() {
        bail!("no numeric or boolean columns to use");
    }
    let m = t.to_matrix(&names)?;
    Ok((names, m))
}

/// Splits `COL=VALUE`.
fn split_assignment(raw: &str) -> Result<(&str, &str)> {
    raw.split_once('=')
        .filter(|(c, v)| !c.is_empty() && !v.is_empty())
        .ok_or_else(|| anyhow!("expected COL=VALUE, got `{raw}`"))
}

fn parse_number(s: &str, what: &str) -> Result<f64> {
    s.parse().map_err(|_| anyhow!("{what}: `{s}` is not a number"))
}

fn parse_count(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| anyhow!("{what}: `{s}` is not a non-negative integer"))
}

fn markdown_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

fn json_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn describe(a: &DescribeArgs) -> Result<Outcome> {
    let t = load(&a.input)?;
    let value = match &a.column {
        Some(name) => serde_json::to_value(summarize(t.column(name)?)?)?,
        None => json!({
            "table": t.name(),
            "rows": t.row_count(),
            "columns": null_counts(&t),
        }),
    };
    match a.format {
        OutputFormat::Json => print_json(&value)?,
        OutputFormat::Markdown => {
            let md = match (&a.column, &value) {
                (Some(_), Value::Object(fields)) => markdown_table(
                    &["statistic", "value"],
                    &fields.iter().map(|(k, v)| vec![k.clone(), json_cell(v)]).collect::<Vec<_>>(),
                ),
                _ => markdown_table(
                    &["column", "kind", "nulls"],
                    &null_counts(&t)
                        .entries
                        .iter()
                        .map(|e| vec![e.name.clone(), e.kind.to_string(), e.null_count.to_string()])
                        .collect::<Vec<_>>(),
                ),
            };
            print!("{md}");
        }
    }
    Ok(Outcome::Done)
}

fn impute_strategy(raw: &str, kind: ColumnKind) -> Result<ImputeStrategy> {
    Ok(match raw.split_once(':') {
        None => match raw {
            "mean" => ImputeStrategy::Mean,
            "median" => ImputeStrategy::Median,
            "mode" => ImputeStrategy::Mode,
            other => bail!("unknown impute strategy `{other}`"),
        },
        Some(("const", v)) => ImputeStrategy::Constant(match kind {
            ColumnKind::Numeric => FillValue::Number(parse_number(v, "impute constant")?),
            ColumnKind::Boolean => FillValue::Flag(match v {
                "1" | "true" => true,
                "0" | "false" => false,
                _ => bail!("boolean fill must be 0/1 or true/false, got `{v}`"),
            }),
            ColumnKind::Categorical => FillValue::Label(v.to_string()),
        }),
        Some(("regress", p)) => ImputeStrategy::LinearRegression {
            predictor: p.to_string(),
        },
        Some(_) => bail!("unknown impute strategy `{raw}`"),
    })
}

fn outlier_method(raw: &str) -> Result<OutlierMethod> {
    let (name, param) = raw.split_once(':').map_or((raw, None), |(n, p)| (n, Some(p)));
    let param = param.map(|p| parse_number(p, "outlier parameter")).transpose()?;
    Ok(match name {
        "iqr" => OutlierMethod::Iqr { k: param.unwrap_or(1.5) },
        "z" | "zscore" => OutlierMethod::ZScore {
            threshold: param.unwrap_or(3.0),
        },
        other => bail!("unknown outlier method `{other}`"),
    })
}

fn transform_kind(raw: &str) -> Result<TransformKind> {
    Ok(match raw {
        "log" => TransformKind::Log,
        "sqrt" => TransformKind::Sqrt,
        "minmax" => TransformKind::MinMax { lo: 0.0, hi: 1.0 },
        "zscore" => TransformKind::ZScoreStandardize,
        other => bail!("unknown transform `{other}`"),
    })
}

fn binning_spec(raw: &str) -> Result<BinningSpec> {
    match raw.split_once(':') {
        Some(("width", n)) => Ok(BinningSpec::EqualWidth(parse_count(n, "bin count")?)),
        Some(("quantile", n)) => Ok(BinningSpec::Quantile(parse_count(n, "bin count")?)),
        _ => bail!("expected width:N or quantile:N, got `{raw}`"),
    }
}

/// Steps run in a fixed order: drop, impute, outliers, transform, encode, bin.
pub fn clean(a: &CleanArgs) -> Result<Outcome> {
    let mut t = load(&a.input)?;
    if !a.drop.is_empty() {
        t = t.drop_columns(&a.drop)?;
    }
    for raw in &a.impute {
        let (col, strategy) = split_assignment(raw)?;
        let c = t.column(col)?;
        let filled = impute(c, &impute_strategy(strategy, c.kind())?, &t)
            .with_context(|| format!("imputing {col}"))?;
        eprintln!("imputed {} cells of {col}", c.null_count());
        t = t.replace_column(filled)?;
    }
    let action = match a.outlier_action {
        OutlierActionArg::Remove => OutlierAction::Remove,
        OutlierActionArg::Clip => OutlierAction::Clip,
        OutlierActionArg::Flag => OutlierAction::Flag,
    };
    for raw in &a.outliers {
        let (col, method) = split_assignment(raw)?;
        let c = t.column(col)?;
        let report = detect_outliers(c, outlier_method(method)?)?;
        eprintln!("{} outliers in {col}", report.outlier_row_indices.len());
        t = match handle_outliers(c, &report, action)? {
            HandledOutliers::Remove { keep } => t.filter_rows(&keep)?,
            HandledOutliers::Clipped(c) => t.replace_column(c)?,
            HandledOutliers::Flagged(c) => t.with_column(c)?,
        };
    }
    for raw in &a.transform {
        let (col, kind) = split_assignment(raw)?;
        t = t.replace_column(transform(t.column(col)?, transform_kind(kind)?)?)?;
    }
    for raw in &a.encode {
        let (col, kind) = split_assignment(raw)?;
        let kind = match kind {
            "onehot" => EncodeKind::OneHot,
            "label" => EncodeKind::Label,
            other => bail!("unknown encoding `{other}`"),
        };
        t = encode(&t, col, kind)?;
    }
    for raw in &a.bin {
        let (col, spec) = split_assignment(raw)?;
        let binned = bin(t.column(col)?, &binning_spec(spec)?)?;
        t = t.splice_column(col, vec![binned])?;
    }
    match &a.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&t, BufWriter::new(f), b',')?;
            eprintln!("wrote {} rows to {}", t.row_count(), path.display());
        }
        None => write_csv(&t, io::stdout().lock(), b',')?,
    }
    Ok(Outcome::Done)
}

pub fn corr(a: &CorrArgs) -> Result<Outcome> {
    let t = load(&a.input)?;
    let m = if a.columns.is_empty() {
        correlation_matrix(&t, a.method.into())?
    } else {
        correlation_matrix_of(&t, &a.columns, a.method.into())?
    };
    if let Some(path) = &a.heatmap {
        let title = format!("{} correlation", m.method);
        write_file(path, plot_heatmap(&m, &title).as_str().as_bytes())?;
    }
    print_json(&m)?;
    Ok(Outcome::Done)
}

pub fn cluster(a: &ClusterArgs, seed: u64) -> Result<Outcome> {
    let t = load(&a.input)?;
    let (names, x) = feature_matrix(&t, &a.columns)?;
    let value = match a.algo {
        Algo::Kmeans => {
            let mut p = KMeansParams::new(a.k, seed);
            if let Some(m) = a.max_iter {
                p.max_iter = m;
            }
            let r = kmeans(&x, &p)?;
            json!({ "algo": "kmeans", "columns": names, "labels": r.labels, "result": r })
        }
        Algo::Hier => {
            let d = agglomerative(&x, a.linkage.into())?;
            let labels = cut(&d, a.k)?;
            json!({ "algo": "hier", "columns": names, "k": a.k, "labels": labels, "dendrogram": d })
        }
        Algo::Dbscan => {
            let r = dbscan(&x, a.eps, a.min_pts)?;
            json!({ "algo": "dbscan", "columns": names, "labels": r.labels, "result": r })
        }
        Algo::Gmm => {
            let mut p = GmmParams::new(a.k, seed);
            p.covariance = match a.covariance {
                CovarianceArg::Full => CovarianceType::Full,
                CovarianceArg::Diagonal => CovarianceType::Diagonal,
            };
            if let Some(m) = a.max_iter {
                p.max_iter = m;
            }
            let model = gmm(&x, &p)?;
            let (labels, _) = gmm_predict(&model, &x)?;
            json!({ "algo": "gmm", "columns": names, "labels": labels, "model": model })
        }
    };
    print_json(&value)?;
    Ok(Outcome::Done)
}

pub fn pca(a: &PcaArgs) -> Result<Outcome> {
    let t = load(&a.input)?;
    let (names, x) = feature_matrix(&t, &a.columns)?;
    let k = a.components.unwrap_or(names.len());
    let model = fit_pca_with(&x, k, PcaOptions { standardize: a.standardize })?;
    print_json(&json!({ "columns": names, "model": model }))?;
    Ok(Outcome::Done)
}

pub fn timeseries(a: &TimeseriesArgs) -> Result<Outcome> {
    let t = load(&a.input)?;
    let c = t.column(&a.column)?;
    if c.null_count() > 0 {
        bail!("column `{}` has {} missing values; impute first", a.column, c.null_count());
    }
    let s = TimeSeries::new(c.present_numeric()?)?;
    let result = match a.op {
        TsOp::Ma => serde_json::to_value(moving_average(&s, a.window)?.values)?,
        TsOp::Ewm => serde_json::to_value(exp_smoothing(&s, a.alpha)?.values)?,
        TsOp::Diff => serde_json::to_value(difference(&s, a.lag)?.values)?,
        TsOp::Cumsum => serde_json::to_value(cumulative_sum(&s).values)?,
        TsOp::Acf => serde_json::to_value(acf(&s, a.max_lag)?)?,
        TsOp::Pacf => serde_json::to_value(pacf(&s, a.max_lag)?)?,
        TsOp::Decompose => {
            let period = a
                .period
                .ok_or_else(|| anyhow!("--period is required for decompose"))?;
            serde_json::to_value(decompose_additive(&s, period)?)?
        }
        TsOp::Stationarity => serde_json::to_value(stationarity_check(&s, a.segments, a.rel_tol)?)?,
    };
    print_json(&result)?;
    Ok(Outcome::Done)
}

fn required<'a>(v: &'a Option<String>, flag: &str, kind: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| anyhow!("--{flag} is required for --kind {kind}"))
}

pub fn plot(a: &PlotArgs) -> Result<Outcome> {
    let t = load(&a.input)?;
    let (doc, title) = match a.kind {
        PlotKind::Hist => {
            let col = required(&a.column, "column", "hist")?;
            let spec = a.bins.map_or(BinSpec::Auto, BinSpec::Fixed);
            let title = a.title.clone().unwrap_or_else(|| format!("{col} histogram"));
            (plot_histogram(&histogram(t.column(col)?, spec)?, &title), title)
        }
        PlotKind::Box => {
            let col = required(&a.column, "column", "box")?;
            let c = t.column(col)?;
            let report = detect_outliers(c, OutlierMethod::Iqr { k: a.whisker_k })?;
            let beyond: Vec<f64> = report
                .outlier_row_indices
                .iter()
                .filter_map(|&i| c.f64_cell(i))
                .collect();
            let title = a.title.clone().unwrap_or_else(|| format!("{col} box plot"));
            (plot_box(&summarize(c)?, a.whisker_k, &beyond, &title), title)
        }
        PlotKind::Bar => {
            let col = required(&a.column, "column", "bar")?;
            let title = a.title.clone().unwrap_or_else(|| format!("{col} counts"));
            (plot_bar(&value_counts(t.column(col)?)?, &title)?, title)
        }
        PlotKind::Scatter => {
            let x = required(&a.x, "x", "scatter")?;
            let y = required(&a.y, "y", "scatter")?;
            let title = a.title.clone().unwrap_or_else(|| format!("{y} vs {x}"));
            (plot_scatter(t.column(x)?, t.column(y)?, &title)?, title)
        }
        PlotKind::Heatmap => {
            let m = correlation_matrix(&t, a.method.into())?;
            let title = a.title.clone().unwrap_or_else(|| format!("{} correlation", m.method));
            (plot_heatmap(&m, &title), title)
        }
    };
    write_file(&a.out, doc.as_str().as_bytes())?;
    print_json(&json!({ "written": a.out, "title": title }))?;
    Ok(Outcome::Done)
}

pub fn churn_report(a: &ChurnReportArgs) -> Result<Outcome> {
    let t = read_csv(&a.csv, &churn_csv_options())
        .with_context(|| format!("reading {}", a.csv.display()))?;
    let config = FindingsConfig {
        mode: match a.findings {
            FindingsArg::Auto => EvaluationMode::Auto,
            FindingsArg::Always => EvaluationMode::Always,
            FindingsArg::Never => EvaluationMode::Never,
        },
        ..FindingsConfig::default()
    };
    let out = churn_pipeline(&t, &config)?;
    let format = match a.format {
        ReportFormatArg::Md => ReportFormat::Markdown,
        ReportFormatArg::Html => ReportFormat::Html,
    };
    let files = render_report(&out, format, &a.out)?;
    let r = &out.report;
    let count = |v: Verdict| r.findings.iter().filter(|f| f.verdict == v).count();
    print_json(&json!({
        "out_dir": a.out,
        "files": files,
        "row_count": r.row_count,
        "evaluated": r.evaluated,
        "churn_rate": r.churn_rate,
        "hascrcard_rate": r.hascrcard_rate,
        "verdicts": {
            "PASS": count(Verdict::Pass),
            "FAIL": count(Verdict::Fail),
            "NOT-EVALUATED": count(Verdict::NotEvaluated),
        },
    }))?;
    for f in r.findings.iter().filter(|f| f.verdict == Verdict::Fail) {
        eprintln!("FAIL {}: {} (measured {}; {})", f.id, f.claim, f.measured, f.criterion);
    }
    Ok(if out.any_failed() {
        Outcome::FindingsFailed
    } else {
        Outcome::Done
    })
}
