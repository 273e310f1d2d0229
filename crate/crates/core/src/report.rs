//! Bank-churn case study: schema validation, the fixed sequence of EDA steps,
//! findings with declared tolerances, and Markdown/HTML/JSON rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::assoc::{self, CorrelationMatrix, CorrelationMethod};
use crate::cluster::seeded_rng;
use crate::error::{EdaError, Result};
use crate::stats::{self, BinSpec, FrequencyTable, Histogram, SummaryStats};
use crate::table::{self, Column, ColumnKind, CsvOptions, Schema, Table};
use crate::viz::{self, escape_xml, SvgDoc};

/// Required columns and their kinds.
pub const REQUIRED_COLUMNS: [(&str, ColumnKind); 11] = [
    ("CreditScore", ColumnKind::Numeric),
    ("Geography", ColumnKind::Categorical),
    ("Gender", ColumnKind::Categorical),
    ("Age", ColumnKind::Numeric),
    ("Tenure", ColumnKind::Numeric),
    ("Balance", ColumnKind::Numeric),
    ("NumOfProducts", ColumnKind::Numeric),
    ("HasCrCard", ColumnKind::Boolean),
    ("IsActiveMember", ColumnKind::Boolean),
    ("EstimatedSalary", ColumnKind::Numeric),
    ("Exited", ColumnKind::Boolean),
];

/// Identifier columns removed before analysis.
pub const DROPPABLE_COLUMNS: [&str; 3] = ["RowNumber", "CustomerId", "Surname"];

/// Row count of the public dataset; `EvaluationMode::Auto` evaluates
/// findings only for tables of this size.
pub const FULL_DATASET_ROWS: usize = 10_000;

/// CSV options that type the three 0/1 flags as booleans even when a column
/// happens to hold a single value.
pub fn churn_csv_options() -> CsvOptions {
    CsvOptions {
        boolean_columns: vec!["HasCrCard".into(), "IsActiveMember".into(), "Exited".into()],
        ..CsvOptions::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChurnSchema {
    pub required: Vec<(String, ColumnKind)>,
    /// Identifier columns present in the input.
    pub droppable_present: Vec<String>,
}

/// Checks every required column at once and lists all mismatches.
pub fn validate_schema(t: &Table) -> Result<ChurnSchema> {
    let mut problems = Vec::new();
    for (name, kind) in REQUIRED_COLUMNS {
        match t.column(name) {
            Err(_) => problems.push(format!("missing column {name}")),
            Ok(c) if c.kind() != kind => problems.push(format!(
                "column {name} is {}, expected {kind}",
                c.kind()
            )),
            Ok(_) => {}
        }
    }
    if !problems.is_empty() {
        return Err(EdaError::SchemaMismatch(problems));
    }
    Ok(ChurnSchema {
        required: REQUIRED_COLUMNS
            .iter()
            .map(|(n, k)| (n.to_string(), *k))
            .collect(),
        droppable_present: DROPPABLE_COLUMNS
            .iter()
            .filter(|n| t.position(n).is_some())
            .map(|n| n.to_string())
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "NOT-EVALUATED")]
    NotEvaluated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotEvaluated => "NOT-EVALUATED",
        }
    }

    fn check(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub id: String,
    pub claim: String,
    /// Human-readable measurement.
    pub measured: String,
    /// Numeric measurement the verdict is based on, when there is one.
    pub value: Option<f64>,
    /// Acceptance rule with its tolerance.
    pub criterion: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvaluationMode {
    /// Evaluate when the table has the full dataset's row count.
    #[default]
    Auto,
    Always,
    Never,
}

/// Tolerances for each finding. The claims are qualitative; these bounds
/// are adjustable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindingsConfig {
    pub mode: EvaluationMode,
    pub credit_score_max: f64,
    pub credit_modal_range: (f64, f64),
    pub credit_age_abs_r: f64,
    pub tenure_rel_dev: f64,
    pub balance_zero_min: f64,
    pub products_one_two_min: f64,
    pub salary_bins: usize,
    pub salary_ratio_max: f64,
    pub gender_share_range: (f64, f64),
    pub hascrcard_range: (f64, f64),
    pub churn_range: (f64, f64),
}

impl Default for FindingsConfig {
    fn default() -> Self {
        FindingsConfig {
            mode: EvaluationMode::Auto,
            credit_score_max: 850.0,
            credit_modal_range: (600.0, 700.0),
            credit_age_abs_r: 0.1,
            tenure_rel_dev: 0.3,
            balance_zero_min: 0.2,
            products_one_two_min: 0.9,
            salary_bins: 10,
            salary_ratio_max: 1.5,
            gender_share_range: (0.4, 0.6),
            hascrcard_range: (0.70, 0.72),
            churn_range: (0.19, 0.21),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupRate {
    pub label: String,
    pub customers: usize,
    pub exited: usize,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChurnReport {
    pub row_count: usize,
    pub column_count: usize,
    pub dropped_columns: Vec<String>,
    pub null_counts: Schema,
    pub geography_counts: FrequencyTable,
    pub gender_counts: FrequencyTable,
    pub correlation_heatmap: CorrelationMatrix,
    pub credit_score_stats: SummaryStats,
    pub credit_score_histogram: Histogram,
    pub credit_age_pearson: f64,
    /// Ordered by tenure year.
    pub tenure_counts: FrequencyTable,
    pub churn_by_geography: Vec<GroupRate>,
    pub churn_rate: f64,
    pub hascrcard_rate: f64,
    pub balance_zero_share: f64,
    pub products_one_or_two_share: f64,
    pub salary_histogram: Histogram,
    pub evaluated: bool,
    pub findings: Vec<Finding>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    /// `NN_name.svg`
    pub file_name: String,
    pub title: String,
    pub svg: SvgDoc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChurnOutput {
    pub report: ChurnReport,
    pub plots: Vec<Plot>,
}

impl ChurnOutput {
    pub fn any_failed(&self) -> bool {
        self.report.findings.iter().any(|f| f.verdict == Verdict::Fail)
    }
}

fn share(hits: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        hits as f64 / n as f64
    }
}

fn numeric_share(c: &Column, pred: impl Fn(f64) -> bool) -> Result<f64> {
    let v = c.present_numeric()?;
    Ok(share(v.iter().filter(|&&x| pred(x)).count(), v.len()))
}

/// Present cells of a boolean or numeric column as numbers.
fn flag_values(c: &Column) -> Result<Vec<f64>> {
    Ok(c.f64_cells()?.into_iter().flatten().collect())
}

fn tenure_counts(c: &Column) -> Result<FrequencyTable> {
    let mut rows: Vec<(f64, String, usize)> = Vec::new();
    for v in c.present_numeric()? {
        match rows.iter_mut().find(|r| r.0 == v) {
            Some(r) => r.2 += 1,
            None => rows.push((v, table::format_number(v), 1)),
        }
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(FrequencyTable::from_counts(
        rows.into_iter().map(|(_, l, n)| (l, n)).collect(),
    ))
}

fn churn_by_group(group: &Column, exited: &Column, order: &FrequencyTable) -> Vec<GroupRate> {
    let mut out: Vec<GroupRate> = order
        .rows
        .iter()
        .map(|r| GroupRate {
            label: r.label.clone(),
            customers: 0,
            exited: 0,
            rate: 0.0,
        })
        .collect();
    for i in 0..group.len() {
        let (Some(g), Some(e)) = (group.label(i), exited.f64_cell(i)) else {
            continue;
        };
        if let Some(slot) = out.iter_mut().find(|s| s.label == g) {
            slot.customers += 1;
            if e == 1.0 {
                slot.exited += 1;
            }
        }
    }
    for s in &mut out {
        s.rate = share(s.exited, s.customers);
    }
    out
}

/// Runs the case-study steps in order. Any failure names the step.
pub fn churn_pipeline(t: &Table, config: &FindingsConfig) -> Result<ChurnOutput> {
    let schema = validate_schema(t).map_err(EdaError::at_step("validate_schema"))?;

    let t = t
        .drop_columns(&schema.droppable_present)
        .map_err(EdaError::at_step("drop_identifiers"))?;
    let null_counts = table::null_counts(&t);

    let counts_step = EdaError::at_step("value_counts");
    let geography = t.column("Geography")?;
    let gender = t.column("Gender")?;
    let (geography_counts, gender_counts) = (|| {
        Ok::<_, EdaError>((table::value_counts(geography)?, table::value_counts(gender)?))
    })()
    .map_err(counts_step)?;

    let correlation_heatmap = assoc::correlation_matrix(&t, CorrelationMethod::Pearson)
        .map_err(EdaError::at_step("correlation_matrix"))?;

    let credit = t.column("CreditScore")?;
    let (credit_score_stats, credit_score_histogram) = (|| {
        Ok::<_, EdaError>((stats::summarize(credit)?, stats::histogram(credit, BinSpec::Auto)?))
    })()
    .map_err(EdaError::at_step("credit_score_summary"))?;

    let age = t.column("Age")?;
    let credit_age_pearson =
        assoc::pearson(credit, age).map_err(EdaError::at_step("credit_age_correlation"))?;

    let tenure_counts =
        tenure_counts(t.column("Tenure")?).map_err(EdaError::at_step("tenure_counts"))?;

    let exited = t.column("Exited")?;
    let churn_by_geography = churn_by_group(geography, exited, &geography_counts);

    let rates_step = || EdaError::at_step("rates");
    let exited_values = flag_values(exited).map_err(rates_step())?;
    let stayed = exited_values.iter().filter(|&&v| v == 0.0).count();
    let churn_rate = if exited_values.is_empty() {
        0.0
    } else {
        1.0 - stayed as f64 / exited_values.len() as f64
    };
    let cards = flag_values(t.column("HasCrCard")?).map_err(rates_step())?;
    let hascrcard_rate = share(cards.iter().filter(|&&v| v == 1.0).count(), cards.len());

    let extras_step = || EdaError::at_step("findings_measurements");
    let balance_zero_share =
        numeric_share(t.column("Balance")?, |v| v == 0.0).map_err(extras_step())?;
    let products_one_or_two_share =
        numeric_share(t.column("NumOfProducts")?, |v| v == 1.0 || v == 2.0)
            .map_err(extras_step())?;
    let salary_histogram = stats::histogram(
        t.column("EstimatedSalary")?,
        BinSpec::Fixed(config.salary_bins),
    )
    .map_err(extras_step())?;

    let evaluated = match config.mode {
        EvaluationMode::Always => true,
        EvaluationMode::Never => false,
        EvaluationMode::Auto => t.row_count() == FULL_DATASET_ROWS,
    };

    let mut report = ChurnReport {
        row_count: t.row_count(),
        column_count: t.columns().len(),
        dropped_columns: schema.droppable_present,
        null_counts,
        geography_counts,
        gender_counts,
        correlation_heatmap,
        credit_score_stats,
        credit_score_histogram,
        credit_age_pearson,
        tenure_counts,
        churn_by_geography,
        churn_rate,
        hascrcard_rate,
        balance_zero_share,
        products_one_or_two_share,
        salary_histogram,
        evaluated,
        findings: Vec::new(),
    };
    report.findings = evaluate_findings(&report, config);

    let plots = render_plots(&report, credit, age).map_err(EdaError::at_step("plots"))?;
    Ok(ChurnOutput { report, plots })
}

fn in_range(v: f64, (lo, hi): (f64, f64)) -> bool {
    v >= lo && v <= hi
}

/// Derives every verdict from the report's own measurements.
pub fn evaluate_findings(r: &ChurnReport, cfg: &FindingsConfig) -> Vec<Finding> {
    let mut out = Vec::new();
    let mut push = |id: &str, claim: &str, measured: String, value: Option<f64>, criterion: String, ok: Option<bool>| {
        let verdict = match ok {
            Some(ok) if r.evaluated => Verdict::check(ok),
            _ => Verdict::NotEvaluated,
        };
        out.push(Finding {
            id: id.into(),
            claim: claim.into(),
            measured,
            value,
            criterion,
            verdict,
        });
    };

    let max = r.credit_score_stats.max;
    push(
        "F1",
        "CreditScore has an outlier at the maximum value of 850",
        format!("max = {}", table::format_number(max)),
        Some(max),
        format!("max == {}", table::format_number(cfg.credit_score_max)),
        Some(max == cfg.credit_score_max),
    );

    let modal = r
        .credit_score_histogram
        .modal_bin()
        .map(|i| r.credit_score_histogram.bin_center(i));
    push(
        "F2",
        "Most credit scores fall between 600 and 700",
        modal.map_or("no data".into(), |m| format!("modal bin center = {m:.2}")),
        modal,
        format!(
            "modal bin center in [{}, {}]",
            cfg.credit_modal_range.0, cfg.credit_modal_range.1
        ),
        modal.map(|m| in_range(m, cfg.credit_modal_range)),
    );

    let rho = r.credit_age_pearson;
    push(
        "F3",
        "No correlation between age and credit score",
        format!("pearson = {rho:.4}"),
        Some(rho),
        format!("|pearson| < {}", cfg.credit_age_abs_r),
        Some(rho.abs() < cfg.credit_age_abs_r),
    );

    let tenure_dev = tenure_deviation(&r.tenure_counts);
    push(
        "F4",
        "Tenure is approximately uniform apart from the first and last year",
        tenure_dev.map_or("fewer than three tenure values".into(), |d| {
            format!("max relative deviation of inner years = {d:.4}")
        }),
        tenure_dev,
        format!("every inner year-count within ±{} of their mean", cfg.tenure_rel_dev),
        tenure_dev.map(|d| d <= cfg.tenure_rel_dev),
    );

    push(
        "F5",
        "Balance has a significant spike at zero",
        format!("zero-balance share = {:.4}", r.balance_zero_share),
        Some(r.balance_zero_share),
        format!("share > {}", cfg.balance_zero_min),
        Some(r.balance_zero_share > cfg.balance_zero_min),
    );

    push(
        "F6",
        "Most customers hold 1 or 2 products",
        format!("share with 1 or 2 products = {:.4}", r.products_one_or_two_share),
        Some(r.products_one_or_two_share),
        format!("share > {}", cfg.products_one_two_min),
        Some(r.products_one_or_two_share > cfg.products_one_two_min),
    );

    let salary_ratio = bin_ratio(&r.salary_histogram);
    push(
        "F7",
        "EstimatedSalary is roughly uniform",
        salary_ratio.map_or("empty bin".into(), |q| format!("max/min bin count = {q:.4}")),
        salary_ratio,
        format!(
            "max/min bin-count ratio < {} over {} bins",
            cfg.salary_ratio_max, cfg.salary_bins
        ),
        Some(salary_ratio.is_some_and(|q| q < cfg.salary_ratio_max)),
    );

    let total = r.gender_counts.total();
    let shares: Vec<(String, f64)> = r
        .gender_counts
        .rows
        .iter()
        .map(|row| (row.label.clone(), share(row.count, total)))
        .collect();
    let (glo, ghi) = cfg.gender_share_range;
    push(
        "F8",
        "Roughly equal numbers of male and female customers",
        shares
            .iter()
            .map(|(l, s)| format!("{l} = {s:.4}"))
            .collect::<Vec<_>>()
            .join(", "),
        shares.first().map(|s| s.1),
        format!("each gender share in [{glo}, {ghi}]"),
        Some(shares.len() == 2 && shares.iter().all(|(_, s)| in_range(*s, (glo, ghi)))),
    );

    push(
        "F9",
        "About 71% of customers hold a credit card",
        format!("rate = {:.4}", r.hascrcard_rate),
        Some(r.hascrcard_rate),
        format!("rate in [{}, {}]", cfg.hascrcard_range.0, cfg.hascrcard_range.1),
        Some(in_range(r.hascrcard_rate, cfg.hascrcard_range)),
    );

    push(
        "F10",
        "About 20% of customers have exited",
        format!("rate = {:.4}", r.churn_rate),
        Some(r.churn_rate),
        format!("rate in [{}, {}]", cfg.churn_range.0, cfg.churn_range.1),
        Some(in_range(r.churn_rate, cfg.churn_range)),
    );

    let top = r.geography_counts.rows.first();
    let unique_top = match r.geography_counts.rows.as_slice() {
        [a, b, ..] => a.count > b.count,
        [_] => true,
        [] => false,
    };
    push(
        "F11",
        "Most customers are from France",
        top.map_or("no data".into(), |t| format!("modal geography = {} ({})", t.label, t.count)),
        None,
        "France is the unique modal geography".into(),
        Some(unique_top && top.is_some_and(|t| t.label == "France")),
    );

    push(
        "F12",
        "Exit patterns look similar across geographies",
        r.churn_by_geography
            .iter()
            .map(|g| format!("{} = {:.4}", g.label, g.rate))
            .collect::<Vec<_>>()
            .join(", "),
        None,
        "reported only; similarity is a visual judgement".into(),
        None,
    );
    out
}

/// Largest |count - mean| / mean over all tenure values except the smallest
/// and the largest.
pub fn tenure_deviation(f: &FrequencyTable) -> Option<f64> {
    if f.rows.len() < 3 {
        return None;
    }
    let inner = &f.rows[1..f.rows.len() - 1];
    let mean = inner.iter().map(|r| r.count as f64).sum::<f64>() / inner.len() as f64;
    Some(
        inner
            .iter()
            .map(|r| (r.count as f64 - mean).abs() / mean)
            .fold(0.0, f64::max),
    )
}

fn bin_ratio(h: &Histogram) -> Option<f64> {
    let max = *h.counts.iter().max()?;
    let min = *h.counts.iter().min()?;
    (min > 0).then(|| max as f64 / min as f64)
}

fn render_plots(r: &ChurnReport, credit: &Column, age: &Column) -> Result<Vec<Plot>> {
    let mut plots = Vec::new();
    let mut add = |name: &str, title: &str, svg: SvgDoc| {
        plots.push(Plot {
            file_name: format!("{:02}_{name}.svg", plots.len() + 1),
            title: title.into(),
            svg,
        });
    };
    add("geography", "Customers by geography", viz::plot_bar(&r.geography_counts, "Customers by geography")?);
    add("gender", "Customers by gender", viz::plot_bar(&r.gender_counts, "Customers by gender")?);
    add(
        "correlation_heatmap",
        "Pearson correlation",
        viz::plot_heatmap(&r.correlation_heatmap, "Pearson correlation"),
    );
    add(
        "credit_score_histogram",
        "CreditScore distribution",
        viz::plot_histogram(&r.credit_score_histogram, "CreditScore distribution"),
    );
    add(
        "credit_score_vs_age",
        "CreditScore vs Age",
        viz::plot_scatter(credit, age, "CreditScore vs Age")?,
    );
    add("tenure", "Customers by tenure", viz::plot_bar(&r.tenure_counts, "Customers by tenure")?);
    let groups: Vec<String> = r.churn_by_geography.iter().map(|g| g.label.clone()).collect();
    let values: Vec<Vec<f64>> = r
        .churn_by_geography
        .iter()
        .map(|g| vec![(g.customers - g.exited) as f64, g.exited as f64])
        .collect();
    add(
        "churn_by_geography",
        "Exits by geography",
        viz::plot_grouped_bar(
            &groups,
            &["Retained".to_string(), "Exited".to_string()],
            &values,
            "Exits by geography",
        )?,
    );
    Ok(plots)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportFormat {
    Markdown,
    Html,
}

fn metric_rows(r: &ChurnReport) -> Vec<(&'static str, String)> {
    vec![
        ("Rows", r.row_count.to_string()),
        ("Columns after dropping identifiers", r.column_count.to_string()),
        (
            "Dropped columns",
            if r.dropped_columns.is_empty() {
                "none".into()
            } else {
                r.dropped_columns.join(", ")
            },
        ),
        ("Null cells", r.null_counts.total_nulls().to_string()),
        ("Churn rate", format!("{:.4}", r.churn_rate)),
        ("Credit card holders", format!("{:.4}", r.hascrcard_rate)),
        ("CreditScore mean", format!("{:.2}", r.credit_score_stats.mean)),
        ("CreditScore median", format!("{:.2}", r.credit_score_stats.median)),
        ("CreditScore/Age Pearson", format!("{:.4}", r.credit_age_pearson)),
        ("Findings evaluated", if r.evaluated { "yes" } else { "no" }.into()),
    ]
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn markdown(out: &ChurnOutput) -> String {
    let r = &out.report;
    let mut s = String::new();
    s.push_str("# Churn EDA report\n\n## Summary\n\n| Metric | Value |\n|---|---|\n");
    for (k, v) in metric_rows(r) {
        let _ = writeln!(s, "| {k} | {} |", md_cell(&v));
    }
    s.push_str("\n## Churn by geography\n\n| Geography | Customers | Exited | Rate |\n|---|---|---|---|\n");
    for g in &r.churn_by_geography {
        let _ = writeln!(s, "| {} | {} | {} | {:.4} |", md_cell(&g.label), g.customers, g.exited, g.rate);
    }
    s.push_str("\n## Findings\n\n| Id | Claim | Measured | Criterion | Verdict |\n|---|---|---|---|---|\n");
    for f in &r.findings {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            f.id,
            md_cell(&f.claim),
            md_cell(&f.measured),
            md_cell(&f.criterion),
            f.verdict.as_str()
        );
    }
    s.push_str("\n## Plots\n");
    for p in &out.plots {
        let _ = write!(s, "\n### {}\n\n![{}](plots/{})\n", p.title, p.title, p.file_name);
    }
    s
}

fn html(out: &ChurnOutput) -> String {
    let r = &out.report;
    let e = |x: &str| escape_xml(x);
    let mut s = String::new();
    s.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>Churn EDA report</title>\n</head>\n<body>\n<h1>Churn EDA report</h1>\n<h2>Summary</h2>\n<table>\n<tr><th>Metric</th><th>Value</th></tr>\n");
    for (k, v) in metric_rows(r) {
        let _ = writeln!(s, "<tr><td>{}</td><td>{}</td></tr>", e(k), e(&v));
    }
    s.push_str("</table>\n<h2>Churn by geography</h2>\n<table>\n<tr><th>Geography</th><th>Customers</th><th>Exited</th><th>Rate</th></tr>\n");
    for g in &r.churn_by_geography {
        let _ = writeln!(
            s,
            "<tr><td>{}</td><td>{}</td><td>{}</td><td>{:.4}</td></tr>",
            e(&g.label),
            g.customers,
            g.exited,
            g.rate
        );
    }
    s.push_str("</table>\n<h2>Findings</h2>\n<table>\n<tr><th>Id</th><th>Claim</th><th>Measured</th><th>Criterion</th><th>Verdict</th></tr>\n");
    for f in &r.findings {
        let _ = writeln!(
            s,
            "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>",
            e(&f.id),
            e(&f.claim),
            e(&f.measured),
            e(&f.criterion),
            f.verdict.as_str()
        );
    }
    s.push_str("</table>\n<h2>Plots</h2>\n");
    for p in &out.plots {
        let _ = writeln!(
            s,
            "<figure><img src=\"plots/{}\" alt=\"{}\"><figcaption>{}</figcaption></figure>",
            e(&p.file_name),
            e(&p.title),
            e(&p.title)
        );
    }
    s.push_str("</body>\n</html>\n");
    s
}

/// Writes `report.md` or `report.html`, `report.json` and `plots/*.svg`
/// into `out_dir`, returning the written paths in a fixed order.
pub fn render_report(out: &ChurnOutput, format: ReportFormat, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let plots_dir = out_dir.join("plots");
    std::fs::create_dir_all(&plots_dir)?;
    let mut written = Vec::new();
    let (name, body) = match format {
        ReportFormat::Markdown => ("report.md", markdown(out)),
        ReportFormat::Html => ("report.html", html(out)),
    };
    let doc = out_dir.join(name);
    std::fs::write(&doc, body)?;
    written.push(doc);
    let json = out_dir.join("report.json");
    let mut text = serde_json::to_string_pretty(&out.report)?;
    text.push('\n');
    std::fs::write(&json, text)?;
    written.push(json);
    for p in &out.plots {
        let path = plots_dir.join(&p.file_name);
        p.svg.write_to(&path)?;
        written.push(path);
    }
    Ok(written)
}

/// Schema-conformant synthetic churn table with roughly the marginal shapes
/// of the public dataset. Deterministic for a given seed.
pub fn synthetic_churn(rows: usize, seed: u64) -> Result<Table> {
    const SURNAMES: [&str; 12] = [
        "Hargrave", "Hill", "Onio", "Boni", "Mitchell", "Chu", "Bartlett", "Obinna", "He",
        "Scott", "Bearce", "Andrews",
    ];
    let mut rng = seeded_rng(seed);
    let credit_dist = Normal::new(650.0, 97.0).map_err(|e| EdaError::invalid(e.to_string()))?;
    let age_dist = Normal::new(39.0, 10.5).map_err(|e| EdaError::invalid(e.to_string()))?;
    let balance_dist = Normal::new(119_000.0, 30_000.0).map_err(|e| EdaError::invalid(e.to_string()))?;

    let mut cols: Vec<Vec<Option<f64>>> = (0..11).map(|_| Vec::with_capacity(rows)).collect();
    let mut surname = Vec::with_capacity(rows);
    let mut geography = Vec::with_capacity(rows);
    let mut gender = Vec::with_capacity(rows);
    let mut flags: [Vec<Option<bool>>; 3] = Default::default();
    for i in 0..rows {
        cols[0].push(Some((i + 1) as f64));
        cols[1].push(Some((15_600_000 + i * 7 % 100_000) as f64));
        surname.push(Some(SURNAMES[rng.random_range(0..SURNAMES.len() as u64) as usize]));
        let credit: f64 = credit_dist.sample(&mut rng);
        cols[2].push(Some(credit.round().clamp(350.0, 850.0)));
        let g: f64 = rng.random();
        geography.push(Some(if g < 0.5 {
            "France"
        } else if g < 0.75 {
            "Germany"
        } else {
            "Spain"
        }));
        gender.push(Some(if rng.random_bool(0.545) { "Male" } else { "Female" }));
        let age: f64 = age_dist.sample(&mut rng);
        cols[3].push(Some(age.round().clamp(18.0, 92.0)));
        cols[4].push(Some(rng.random_range(0..11u64) as f64));
        let balance = if rng.random_bool(0.36) {
            0.0
        } else {
            let b: f64 = balance_dist.sample(&mut rng);
            (b.max(1_000.0) * 100.0).round() / 100.0
        };
        cols[5].push(Some(balance));
        let p: f64 = rng.random();
        cols[6].push(Some(if p < 0.5 {
            1.0
        } else if p < 0.96 {
            2.0
        } else if p < 0.99 {
            3.0
        } else {
            4.0
        }));
        flags[0].push(Some(rng.random_bool(0.71)));
        flags[1].push(Some(rng.random_bool(0.51)));
        let salary: f64 = rng.random_range(11.58..199_992.48);
        cols[7].push(Some((salary * 100.0).round() / 100.0));
        flags[2].push(Some(rng.random_bool(0.2)));
    }
    let mut c = cols.into_iter();
    let mut next = |name: &str| Column::numeric(name, c.next().unwrap_or_default());
    let row_number = next("RowNumber");
    let customer_id = next("CustomerId");
    let credit = next("CreditScore");
    let age = next("Age");
    let tenure = next("Tenure");
    let balance = next("Balance");
    let products = next("NumOfProducts");
    let salary = next("EstimatedSalary");
    let [card, active, exited] = flags;
    Table::new(
        "churn_synthetic",
        vec![
            row_number,
            customer_id,
            Column::categorical("Surname", surname),
            credit,
            Column::categorical("Geography", geography),
            Column::categorical("Gender", gender),
            age,
            tenure,
            balance,
            products,
            Column::boolean("HasCrCard", card),
            Column::boolean("IsActiveMember", active),
            salary,
            Column::boolean("Exited", exited),
        ],
    )
}
