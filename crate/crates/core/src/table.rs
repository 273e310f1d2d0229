//! Typed columnar tables with a per-cell missing mask.
//!
//! Tables are immutable: every transforming operation returns a new table
//! and leaves its input untouched.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{EdaError, Result};
use crate::linalg::Matrix;
use crate::stats::FrequencyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ColumnKind {
    Numeric,
    Categorical,
    Boolean,
}

impl fmt::Display for ColumnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColumnKind::Numeric => "Numeric",
            ColumnKind::Categorical => "Categorical",
            ColumnKind::Boolean => "Boolean",
        })
    }
}

/// Cell storage. Slots under a set missing bit hold a placeholder
/// (`0.0`, `""`, `false`) and must never be read as data.
#[derive(Debug, Clone, PartialEq)]
pub enum ColumnData {
    Numeric(Vec<f64>),
    Categorical(Vec<String>),
    Boolean(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    name: String,
    data: ColumnData,
    missing: Vec<bool>,
}

impl Column {
    /// Numeric column; `None` and non-finite values become missing.
    pub fn numeric<I>(name: impl Into<String>, cells: I) -> Self
    where
        I: IntoIterator<Item = Option<f64>>,
    {
        let (values, missing) = cells
            .into_iter()
            .map(|c| match c {
                Some(v) if v.is_finite() => (v, false),
                _ => (0.0, true),
            })
            .unzip();
        Column {
            name: name.into(),
            data: ColumnData::Numeric(values),
            missing,
        }
    }

    /// Numeric column with no missing cells.
    pub fn from_f64s(name: impl Into<String>, values: &[f64]) -> Self {
        Column::numeric(name, values.iter().map(|&v| Some(v)))
    }

    /// Categorical column; `None` and empty labels become missing.
    pub fn categorical<I, S>(name: impl Into<String>, cells: I) -> Self
    where
        I: IntoIterator<Item = Option<S>>,
        S: Into<String>,
    {
        let (values, missing) = cells
            .into_iter()
            .map(|c| match c.map(Into::into) {
                Some(s) if !s.is_empty() => (s, false),
                _ => (String::new(), true),
            })
            .unzip();
        Column {
            name: name.into(),
            data: ColumnData::Categorical(values),
            missing,
        }
    }

    pub fn boolean<I>(name: impl Into<String>, cells: I) -> Self
    where
        I: IntoIterator<Item = Option<bool>>,
    {
        let (values, missing) = cells
            .into_iter()
            .map(|c| match c {
                Some(b) => (b, false),
                None => (false, true),
            })
            .unzip();
        Column {
            name: name.into(),
            data: ColumnData::Boolean(values),
            missing,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ColumnKind {
        match self.data {
            ColumnData::Numeric(_) => ColumnKind::Numeric,
            ColumnData::Categorical(_) => ColumnKind::Categorical,
            ColumnData::Boolean(_) => ColumnKind::Boolean,
        }
    }

    pub fn data(&self) -> &ColumnData {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.missing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn missing_mask(&self) -> &[bool] {
        &self.missing
    }

    pub fn is_missing(&self, row: usize) -> bool {
        self.missing[row]
    }

    pub fn null_count(&self) -> usize {
        self.missing.iter().filter(|&&m| m).count()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Column {
        Column {
            name: name.into(),
            ..self.clone()
        }
    }

    pub(crate) fn kind_error(&self, expected: &str) -> EdaError {
        EdaError::KindMismatch {
            column: self.name.clone(),
            expected: expected.into(),
            found: self.kind().to_string(),
        }
    }

    /// Cell as a real: numeric value, or 0/1 for booleans.
    pub fn f64_cell(&self, row: usize) -> Option<f64> {
        if self.missing[row] {
            return None;
        }
        match &self.data {
            ColumnData::Numeric(v) => Some(v[row]),
            ColumnData::Boolean(v) => Some(if v[row] { 1.0 } else { 0.0 }),
            ColumnData::Categorical(_) => None,
        }
    }

    /// Cell as a text label; booleans render as `0` / `1`.
    pub fn label(&self, row: usize) -> Option<Cow<'_, str>> {
        if self.missing[row] {
            return None;
        }
        Some(match &self.data {
            ColumnData::Numeric(v) => Cow::Owned(format_number(v[row])),
            ColumnData::Categorical(v) => Cow::Borrowed(v[row].as_str()),
            ColumnData::Boolean(v) => Cow::Borrowed(if v[row] { "1" } else { "0" }),
        })
    }

    /// Per-row reals for numeric or boolean columns.
    pub fn f64_cells(&self) -> Result<Vec<Option<f64>>> {
        match self.kind() {
            ColumnKind::Categorical => Err(self.kind_error("Numeric or Boolean")),
            _ => Ok((0..self.len()).map(|i| self.f64_cell(i)).collect()),
        }
    }

    /// Non-missing values of a numeric column, in row order.
    pub fn present_numeric(&self) -> Result<Vec<f64>> {
        match &self.data {
            ColumnData::Numeric(v) => Ok(v
                .iter()
                .zip(&self.missing)
                .filter(|(_, &m)| !m)
                .map(|(&x, _)| x)
                .collect()),
            _ => Err(self.kind_error("Numeric")),
        }
    }

    pub fn numeric_values(&self) -> Result<&[f64]> {
        match &self.data {
            ColumnData::Numeric(v) => Ok(v),
            _ => Err(self.kind_error("Numeric")),
        }
    }

    /// Keeps the rows where `keep` is true.
    pub fn filter(&self, keep: &[bool]) -> Result<Column> {
        if keep.len() != self.len() {
            return Err(EdaError::LengthMismatch {
                expected: self.len(),
                got: keep.len(),
            });
        }
        fn pick<T: Clone>(v: &[T], keep: &[bool]) -> Vec<T> {
            v.iter()
                .zip(keep)
                .filter(|(_, &k)| k)
                .map(|(x, _)| x.clone())
                .collect()
        }
        let data = match &self.data {
            ColumnData::Numeric(v) => ColumnData::Numeric(pick(v, keep)),
            ColumnData::Categorical(v) => ColumnData::Categorical(pick(v, keep)),
            ColumnData::Boolean(v) => ColumnData::Boolean(pick(v, keep)),
        };
        Ok(Column {
            name: self.name.clone(),
            data,
            missing: pick(&self.missing, keep),
        })
    }

    /// Re-types any column as categorical, rendering values as labels.
    pub fn to_categorical(&self) -> Column {
        Column::categorical(
            self.name.clone(),
            (0..self.len()).map(|i| self.label(i).map(Cow::into_owned)),
        )
    }
}

/// Shortest round-trip rendering of a real (`1.0` renders as `1`).
pub fn format_number(v: f64) -> String {
    format!("{v}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    name: String,
    columns: Vec<Column>,
    row_count: usize,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: Vec<Column>) -> Result<Self> {
        let row_count = columns.first().map_or(0, Column::len);
        let mut seen = BTreeSet::new();
        for c in &columns {
            if c.name.is_empty() {
                return Err(EdaError::invalid("column names must be non-empty"));
            }
            if !seen.insert(c.name.as_str()) {
                return Err(EdaError::DuplicateColumn(c.name.clone()));
            }
            if c.len() != row_count {
                return Err(EdaError::LengthMismatch {
                    expected: row_count,
                    got: c.len(),
                });
            }
        }
        Ok(Table {
            name: name.into(),
            columns,
            row_count,
        })
    }

    /// A table with `row_count` rows and no columns yet.
    pub fn empty(name: impl Into<String>, row_count: usize) -> Self {
        Table {
            name: name.into(),
            columns: Vec::new(),
            row_count,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn column(&self, name: &str) -> Result<&Column> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| EdaError::UnknownColumn(vec![name.to_string()]))
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Returns a new table with `column` appended.
    pub fn with_column(&self, column: Column) -> Result<Table> {
        if column.len() != self.row_count {
            return Err(EdaError::LengthMismatch {
                expected: self.row_count,
                got: column.len(),
            });
        }
        let mut columns = self.columns.clone();
        columns.push(column);
        Table::new(self.name.clone(), columns)
    }

    /// Returns a new table where the column named `name` is replaced in
    /// place by `replacements` (zero or more columns).
    pub fn splice_column(&self, name: &str, replacements: Vec<Column>) -> Result<Table> {
        let pos = self
            .position(name)
            .ok_or_else(|| EdaError::UnknownColumn(vec![name.to_string()]))?;
        let mut columns = self.columns.clone();
        columns.splice(pos..=pos, replacements);
        let t = Table::new(self.name.clone(), columns)?;
        Ok(if t.columns.is_empty() {
            Table::empty(self.name.clone(), self.row_count)
        } else {
            t
        })
    }

    pub fn replace_column(&self, column: Column) -> Result<Table> {
        let name = column.name.clone();
        self.splice_column(&name, vec![column])
    }

    /// Drops exactly the named columns. Every name must exist.
    pub fn drop_columns<S: AsRef<str>>(&self, names: &[S]) -> Result<Table> {
        let unknown: Vec<String> = names
            .iter()
            .map(AsRef::as_ref)
            .filter(|n| self.position(n).is_none())
            .map(str::to_string)
            .collect();
        if !unknown.is_empty() {
            return Err(EdaError::UnknownColumn(unknown));
        }
        let drop: BTreeSet<&str> = names.iter().map(AsRef::as_ref).collect();
        Ok(Table {
            name: self.name.clone(),
            columns: self
                .columns
                .iter()
                .filter(|c| !drop.contains(c.name.as_str()))
                .cloned()
                .collect(),
            row_count: self.row_count,
        })
    }

    /// Keeps the named columns, in the given order.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Table> {
        let unknown: Vec<String> = names
            .iter()
            .map(AsRef::as_ref)
            .filter(|n| self.position(n).is_none())
            .map(str::to_string)
            .collect();
        if !unknown.is_empty() {
            return Err(EdaError::UnknownColumn(unknown));
        }
        let columns = names
            .iter()
            .map(|n| self.column(n.as_ref()).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(Table {
            name: self.name.clone(),
            columns,
            row_count: self.row_count,
        })
    }

    /// Keeps the rows where `keep` is true, across every column.
    pub fn filter_rows(&self, keep: &[bool]) -> Result<Table> {
        if keep.len() != self.row_count {
            return Err(EdaError::LengthMismatch {
                expected: self.row_count,
                got: keep.len(),
            });
        }
        let columns = self
            .columns
            .iter()
            .map(|c| c.filter(keep))
            .collect::<Result<Vec<_>>>()?;
        Ok(Table {
            name: self.name.clone(),
            columns,
            row_count: keep.iter().filter(|&&k| k).count(),
        })
    }

    /// Names of numeric and boolean columns, in table order.
    pub fn numeric_like_columns(&self) -> Vec<&str> {
        self.columns
            .iter()
            .filter(|c| c.kind() != ColumnKind::Categorical)
            .map(|c| c.name.as_str())
            .collect()
    }

    /// Dense `row_count × names.len()` matrix; any missing cell is an error.
    pub fn to_matrix<S: AsRef<str>>(&self, names: &[S]) -> Result<Matrix> {
        let cols = names
            .iter()
            .map(|n| self.column(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        for c in &cols {
            if c.kind() == ColumnKind::Categorical {
                return Err(c.kind_error("Numeric or Boolean"));
            }
        }
        let mut m = Matrix::zeros(self.row_count, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..self.row_count {
                m[(i, j)] = c.f64_cell(i).ok_or_else(|| {
                    EdaError::invalid(format!(
                        "column `{}` has a missing value at row {i}; impute first",
                        c.name
                    ))
                })?;
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaEntry {
    pub name: String,
    pub kind: ColumnKind,
    pub null_count: usize,
}

/// One entry per column, in table order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Schema {
    pub entries: Vec<SchemaEntry>,
}

impl Schema {
    pub fn get(&self, name: &str) -> Option<&SchemaEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn total_nulls(&self) -> usize {
        self.entries.iter().map(|e| e.null_count).sum()
    }
}

/// Per-column missing-cell counts.
pub fn null_counts(t: &Table) -> Schema {
    Schema {
        entries: t
            .columns
            .iter()
            .map(|c| SchemaEntry {
                name: c.name.clone(),
                kind: c.kind(),
                null_count: c.null_count(),
            })
            .collect(),
    }
}

/// Label frequencies of a categorical or boolean column, most frequent
/// first, ties ordered by label.
pub fn value_counts(c: &Column) -> Result<FrequencyTable> {
    if c.kind() == ColumnKind::Numeric {
        return Err(EdaError::KindMismatch {
            column: c.name.clone(),
            expected: "Categorical or Boolean (use a histogram for numeric data)".into(),
            found: "Numeric".into(),
        });
    }
    let mut counts: BTreeMap<Cow<'_, str>, usize> = BTreeMap::new();
    for i in 0..c.len() {
        if let Some(l) = c.label(i) {
            *counts.entry(l).or_default() += 1;
        }
    }
    let mut rows: Vec<(String, usize)> = counts
        .into_iter()
        .map(|(l, n)| (l.into_owned(), n))
        .collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(FrequencyTable::from_counts(rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CaseFold {
    #[default]
    None,
    Lower,
    Upper,
}

#[derive(Debug, Clone)]
pub struct CsvOptions {
    pub delimiter: u8,
    pub has_header: bool,
    /// Cell texts treated as missing, compared case-insensitively after
    /// trimming.
    pub missing_tokens: Vec<String>,
    /// Column names forced to Boolean when their cells are all `0`/`1`.
    pub boolean_columns: Vec<String>,
    /// Trim surrounding whitespace from every cell.
    pub trim: bool,
    /// Canonical case applied to categorical labels.
    pub case_fold: CaseFold,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            delimiter: b',',
            has_header: true,
            missing_tokens: vec![String::new(), "NA".into()],
            boolean_columns: Vec::new(),
            trim: true,
            case_fold: CaseFold::None,
        }
    }
}

impl CsvOptions {
    fn is_missing(&self, cell: &str) -> bool {
        let cell = cell.trim();
        self.missing_tokens
            .iter()
            .any(|t| t.trim().eq_ignore_ascii_case(cell))
    }
}

/// Raw text cells of one column, missing tokens already resolved.
#[derive(Debug, Clone)]
pub struct RawColumn {
    pub name: String,
    pub cells: Vec<Option<String>>,
}

/// Classifies one column of text cells.
///
/// Boolean when every present cell is `0` or `1` and either the column is
/// listed in `boolean_columns` or both values occur; Numeric when every
/// present cell parses as a finite real; Categorical otherwise.
pub fn infer_kind(column: &RawColumn, boolean_columns: &[String]) -> ColumnKind {
    let present = || column.cells.iter().flatten();
    let binary = present().all(|c| c == "0" || c == "1");
    if binary && present().next().is_some() {
        let listed = boolean_columns.iter().any(|b| b == &column.name);
        let both = present().any(|c| c == "0") && present().any(|c| c == "1");
        if listed || both {
            return ColumnKind::Boolean;
        }
    }
    let numeric = present().all(|c| c.parse::<f64>().is_ok_and(f64::is_finite));
    if numeric {
        ColumnKind::Numeric
    } else {
        ColumnKind::Categorical
    }
}

pub fn infer_schema(raw: &[RawColumn], boolean_columns: &[String]) -> Schema {
    Schema {
        entries: raw
            .iter()
            .map(|c| SchemaEntry {
                name: c.name.clone(),
                kind: infer_kind(c, boolean_columns),
                null_count: c.cells.iter().filter(|c| c.is_none()).count(),
            })
            .collect(),
    }
}

pub fn read_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<Table> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_csv_from(file, &name, options)
}

pub fn read_csv_from<R: Read>(reader: R, name: &str, options: &CsvOptions) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);

    let mut records = rdr.records();
    let csv_err = |e: csv::Error| EdaError::Csv {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };

    let first = match records.next() {
        Some(r) => r.map_err(csv_err)?,
        None => return Err(EdaError::NoHeader),
    };
    let width = first.len();
    let (names, mut pending): (Vec<String>, Option<csv::StringRecord>) = if options.has_header {
        let names: Vec<String> = first.iter().map(|h| h.trim().to_string()).collect();
        (names, None)
    } else {
        ((1..=width).map(|i| format!("col{i}")).collect(), Some(first))
    };
    let mut seen = BTreeSet::new();
    for n in &names {
        if n.is_empty() {
            return Err(EdaError::Csv {
                line: 1,
                message: "empty column name in header".into(),
            });
        }
        if !seen.insert(n.as_str()) {
            return Err(EdaError::DuplicateColumn(n.clone()));
        }
    }

    let mut raw: Vec<RawColumn> = names
        .iter()
        .map(|n| RawColumn {
            name: n.clone(),
            cells: Vec::new(),
        })
        .collect();

    loop {
        let record = match pending.take() {
            Some(r) => r,
            None => match records.next() {
                Some(r) => r.map_err(csv_err)?,
                None => break,
            },
        };
        if record.len() != width {
            return Err(EdaError::Csv {
                line: record.position().map_or(0, |p| p.line()),
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        for (col, cell) in raw.iter_mut().zip(record.iter()) {
            let cell = if options.trim { cell.trim() } else { cell };
            col.cells
                .push((!options.is_missing(cell)).then(|| cell.to_string()));
        }
    }

    let schema = infer_schema(&raw, &options.boolean_columns);
    let columns = raw
        .into_iter()
        .zip(&schema.entries)
        .map(|(rc, entry)| build_column(rc, entry.kind, options.case_fold))
        .collect();
    let table = Table::new(name, columns)?;
    Ok(if table.columns.is_empty() {
        Table::empty(name, 0)
    } else {
        table
    })
}

fn build_column(raw: RawColumn, kind: ColumnKind, fold: CaseFold) -> Column {
    let RawColumn { name, cells } = raw;
    match kind {
        ColumnKind::Numeric => Column::numeric(
            name,
            cells
                .iter()
                .map(|c| c.as_deref().and_then(|s| s.parse::<f64>().ok())),
        ),
        ColumnKind::Boolean => Column::boolean(name, cells.iter().map(|c| c.as_deref().map(|s| s == "1"))),
        ColumnKind::Categorical => Column::categorical(
            name,
            cells.into_iter().map(|c| {
                c.map(|s| match fold {
                    CaseFold::None => s,
                    CaseFold::Lower => s.to_lowercase(),
                    CaseFold::Upper => s.to_uppercase(),
                })
            }),
        ),
    }
}

/// Writes the table as CSV with a header row; missing cells are empty.
pub fn write_csv<W: Write>(t: &Table, writer: W, delimiter: u8) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(writer);
    let to_err = |e: csv::Error| EdaError::Csv {
        line: 0,
        message: e.to_string(),
    };
    w.write_record(t.column_names()).map_err(to_err)?;
    for i in 0..t.row_count {
        let row: Vec<Cow<'_, str>> = t
            .columns
            .iter()
            .map(|c| c.label(i).unwrap_or(Cow::Borrowed("")))
            .collect();
        w.write_record(row.iter().map(|c| c.as_ref())).map_err(to_err)?;
    }
    w.flush()?;
    Ok(())
}
