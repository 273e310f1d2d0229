use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exploratory data analysis on CSV files. Machine output is JSON on stdout;
/// diagnostics go to stderr.
#[derive(Debug, Parser)]
#[command(name = "eda", version)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "EDA_SEED", default_value_t = eda_core::DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Column schema with null counts, or summary statistics of one column.
    Describe(DescribeArgs),
    /// Impute, drop, handle outliers, transform, encode and bin; writes CSV.
    Clean(CleanArgs),
    /// Correlation matrix over numeric and boolean columns.
    Corr(CorrArgs),
    /// Cluster rows of numeric columns.
    Cluster(ClusterArgs),
    /// Principal component analysis.
    Pca(PcaArgs),
    /// Time-series operations on one column.
    Timeseries(TimeseriesArgs),
    /// Write one SVG chart.
    Plot(PlotArgs),
    /// Bank-churn case-study report with checked findings.
    ChurnReport(ChurnReportArgs),
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input CSV file.
    pub csv: PathBuf,

    /// Field delimiter.
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,

    /// Treat these 0/1 columns as boolean (comma-separated or repeated).
    #[arg(long = "boolean", value_delimiter = ',')]
    pub boolean_columns: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Markdown,
}

#[derive(Debug, Args)]
pub struct DescribeArgs {
    #[command(flatten)]
    pub input: Input,

    /// Summarize this column instead of listing the schema.
    #[arg(long)]
    pub column: Option<String>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutlierActionArg {
    Remove,
    Clip,
    Flag,
}

#[derive(Debug, Args)]
pub struct CleanArgs {
    #[command(flatten)]
    pub input: Input,

    /// Columns to drop (comma-separated or repeated). Applied first.
    #[arg(long, value_delimiter = ',')]
    pub drop: Vec<String>,

    /// `COL=mean|median|mode|const:VALUE|regress:PREDICTOR`.
    #[arg(long, value_name = "COL=STRATEGY")]
    pub impute: Vec<String>,

    /// `COL=iqr[:K]|z[:THRESHOLD]` (defaults 1.5 and 3).
    #[arg(long, value_name = "COL=METHOD")]
    pub outliers: Vec<String>,

    /// What to do with detected outliers.
    #[arg(long, value_enum, default_value_t = OutlierActionArg::Flag)]
    pub outlier_action: OutlierActionArg,

    /// `COL=log|sqrt|minmax|zscore`.
    #[arg(long, value_name = "COL=KIND")]
    pub transform: Vec<String>,

    /// `COL=onehot|label`.
    #[arg(long, value_name = "COL=KIND")]
    pub encode: Vec<String>,

    /// `COL=width:N|quantile:N`.
    #[arg(long, value_name = "COL=SPEC")]
    pub bin: Vec<String>,

    /// Output CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Pearson,
    Spearman,
    Kendall,
}

impl From<MethodArg> for eda_core::CorrelationMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Pearson => Self::Pearson,
            MethodArg::Spearman => Self::Spearman,
            MethodArg::Kendall => Self::Kendall,
        }
    }
}

#[derive(Debug, Args)]
pub struct CorrArgs {
    #[command(flatten)]
    pub input: Input,

    #[arg(long, value_enum, default_value_t = MethodArg::Pearson)]
    pub method: MethodArg,

    /// Restrict to these columns; default is every numeric and boolean column.
    #[arg(long, value_delimiter = ',')]
    pub columns: Vec<String>,

    /// Also write the matrix as an SVG heatmap.
    #[arg(long, value_name = "SVG")]
    pub heatmap: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Algo {
    Kmeans,
    Hier,
    Dbscan,
    Gmm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LinkageArg {
    Single,
    Complete,
    Average,
}

impl From<LinkageArg> for eda_core::Linkage {
    fn from(l: LinkageArg) -> Self {
        match l {
            LinkageArg::Single => Self::Single,
            LinkageArg::Complete => Self::Complete,
            LinkageArg::Average => Self::Average,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CovarianceArg {
    Full,
    Diagonal,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub input: Input,

    #[arg(long, value_enum)]
    pub algo: Algo,

    /// Feature columns; default is every numeric and boolean column.
    #[arg(long, value_delimiter = ',')]
    pub columns: Vec<String>,

    /// Number of clusters (kmeans, hier, gmm).
    #[arg(long, default_value_t = 2)]
    pub k: usize,

    /// Neighbourhood radius (dbscan).
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,

    /// Neighbours needed for a core point, itself included (dbscan).
    #[arg(long, default_value_t = 5)]
    pub min_pts: usize,

    /// Merge criterion (hier).
    #[arg(long, value_enum, default_value_t = LinkageArg::Average)]
    pub linkage: LinkageArg,

    /// Covariance structure (gmm).
    #[arg(long, value_enum, default_value_t = CovarianceArg::Full)]
    pub covariance: CovarianceArg,

    /// Iteration cap (kmeans, gmm); the library default when absent.
    #[arg(long)]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PcaArgs {
    #[command(flatten)]
    pub input: Input,

    /// Feature columns; default is every numeric and boolean column.
    #[arg(long, value_delimiter = ',')]
    pub columns: Vec<String>,

    /// Number of components; default is all.
    #[arg(long)]
    pub components: Option<usize>,

    /// Scale features to unit variance before fitting.
    #[arg(long)]
    pub standardize: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TsOp {
    Ma,
    Ewm,
    Diff,
    Cumsum,
    Acf,
    Pacf,
    Decompose,
    Stationarity,
}

#[derive(Debug, Args)]
pub struct TimeseriesArgs {
    #[command(flatten)]
    pub input: Input,

    /// Series column, in row order.
    #[arg(long)]
    pub column: String,

    #[arg(long, value_enum)]
    pub op: TsOp,

    /// Moving-average window (ma).
    #[arg(long, default_value_t = 3)]
    pub window: usize,

    /// Smoothing factor in (0, 1] (ewm).
    #[arg(long, default_value_t = 0.3)]
    pub alpha: f64,

    /// Differencing lag (diff).
    #[arg(long, default_value_t = 1)]
    pub lag: usize,

    /// Largest lag (acf, pacf).
    #[arg(long, default_value_t = 10)]
    pub max_lag: usize,

    /// Seasonal period (decompose).
    #[arg(long)]
    pub period: Option<usize>,

    /// Number of segments compared (stationarity).
    #[arg(long, default_value_t = 4)]
    pub segments: usize,

    /// Relative tolerance (stationarity).
    #[arg(long, default_value_t = 0.25)]
    pub rel_tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlotKind {
    Hist,
    Box,
    Bar,
    Scatter,
    Heatmap,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub input: Input,

    #[arg(long, value_enum)]
    pub kind: PlotKind,

    /// Column for hist, box and bar.
    #[arg(long)]
    pub column: Option<String>,

    /// Horizontal column (scatter).
    #[arg(long)]
    pub x: Option<String>,

    /// Vertical column (scatter).
    #[arg(long)]
    pub y: Option<String>,

    /// Bin count (hist); Sturges' rule when absent.
    #[arg(long)]
    pub bins: Option<usize>,

    /// Whisker length in IQRs (box).
    #[arg(long, default_value_t = 1.5)]
    pub whisker_k: f64,

    /// Correlation method (heatmap).
    #[arg(long, value_enum, default_value_t = MethodArg::Pearson)]
    pub method: MethodArg,

    /// Chart title; derived from the columns when absent.
    #[arg(long)]
    pub title: Option<String>,

    /// Output SVG path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormatArg {
    Md,
    Html,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FindingsArg {
    /// Only for a table with the full dataset's 10000 rows.
    Auto,
    Always,
    Never,
}

#[derive(Debug, Args)]
pub struct ChurnReportArgs {
    /// Churn CSV with the 14-column bank schema.
    pub csv: PathBuf,

    /// Output directory for the report, report.json and plots/.
    #[arg(long)]
    pub out: PathBuf,

    #[arg(long, value_enum, default_value_t = ReportFormatArg::Md)]
    pub format: ReportFormatArg,

    /// When to evaluate the findings against their tolerances.
    #[arg(long, value_enum, default_value_t = FindingsArg::Auto)]
    pub findings: FindingsArg,
}
