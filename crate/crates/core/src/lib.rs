//! Exploratory data analysis toolkit.
//!
//! The crate is organised around an immutable, typed columnar [`Table`]
//! with a per-cell missing mask. Every analysis module reads from tables
//! (or plain numeric slices / matrices) and returns new values:
//!
//! * [`table`]: CSV ingestion, schema inference, column selection
//! * [`cleanse`]: imputation, outlier detection, transforms, encoding, binning
//! * [`stats`]: descriptive statistics, quantiles, skewness, kurtosis, histograms
//! * [`assoc`]: covariance, correlation coefficients, contingency tables
//! * [`reduce`]: principal component analysis
//! * [`cluster`]: k-means, agglomerative, DBSCAN, Gaussian mixtures
//! * [`timeseries`]: smoothing, differencing, ACF/PACF, decomposition
//! * [`viz`]: deterministic SVG charts
//! * [`report`]: the bank-churn case-study pipeline

// `!(x > 0.0)` style checks also reject NaN parameters.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assoc;
pub mod cleanse;
pub mod cluster;
mod error;
pub mod linalg;
pub mod reduce;
pub mod report;
pub mod stats;
pub mod table;
pub mod timeseries;
pub mod viz;

pub use assoc::{ContingencyTable, CorrelationMatrix, CorrelationMethod};
pub use cluster::{DbscanResult, Dendrogram, GmmModel, KMeansResult, Linkage};
pub use error::{EdaError, Result};
pub use linalg::Matrix;
pub use reduce::PcaModel;
pub use report::{ChurnReport, ChurnSchema};
pub use stats::{FrequencyTable, Histogram, KurtosisClass, SummaryStats};
pub use table::{Column, ColumnKind, CsvOptions, Schema, Table};
pub use timeseries::{Decomposition, TimeSeries};
pub use viz::SvgDoc;

/// Seed used by every seeded procedure when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 42;
