//! Tabular numeric data with a binary class label.
//!
//! A [`Dataset`] stores features column-major (one `Vec<f64>` per feature),
//! a `{0,1}` label per row, and unique feature names. Validation happens at
//! construction and load time: every cell must be a finite number and the
//! label column must contain both classes. Categorical columns are not
//! auto-encoded; they must be dummy-coded upstream, and any non-numeric cell
//! is rejected with its row and column.
//!
//! Row shuffling for [`split`] and [`kfold`] uses a Fisher-Yates permutation
//! driven by a ChaCha8 generator (see [`crate::seed`]), so the same
//! `(n, k, seed)` always yields the same assignment on every platform.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use thiserror::Error;

use crate::seed::permutation;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv error in {path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("label column {0:?} not found in header")]
    MissingLabelColumn(String),
    #[error("non-numeric cell at row {row}, column {column:?}: {value:?}")]
    NonNumericCell {
        row: usize,
        column: String,
        value: String,
    },
    #[error("non-finite cell at row {row}, column {column:?}")]
    NonFiniteCell { row: usize, column: String },
    #[error("label value outside {{0,1}} at row {row}: {value}")]
    LabelOutOfRange { row: usize, value: f64 },
    #[error("dataset has no rows")]
    Empty,
    #[error("labels contain a single class only")]
    SingleClass,
    #[error("feature name {0:?} is duplicated or empty")]
    BadName(String),
    #[error("column {name:?} has {got} values, expected {expected}")]
    ColumnLength {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("kfold requires 2 <= k <= n, got k={k}, n={n}")]
    BadFoldCount { k: usize, n: usize },
    #[error("train fraction must lie strictly between 0 and 1, got {0}")]
    BadFraction(f64),
    #[error("split would leave an empty side (n={n}, fraction={fraction})")]
    EmptySide { n: usize, fraction: f64 },
}

/// Column-major feature matrix with a binary label vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    columns: Vec<Vec<f64>>,
    labels: Vec<u8>,
    names: Vec<String>,
}

impl Dataset {
    /// Build a validated dataset. Checks column lengths, finiteness, name
    /// uniqueness, and that both classes are present.
    pub fn new(
        columns: Vec<Vec<f64>>,
        labels: Vec<u8>,
        names: Vec<String>,
    ) -> Result<Self, DatasetError> {
        let n = labels.len();
        if n == 0 {
            return Err(DatasetError::Empty);
        }
        if names.len() != columns.len() {
            return Err(DatasetError::ColumnLength {
                name: "<names>".into(),
                got: names.len(),
                expected: columns.len(),
            });
        }
        for (name, col) in names.iter().zip(&columns) {
            if col.len() != n {
                return Err(DatasetError::ColumnLength {
                    name: name.clone(),
                    got: col.len(),
                    expected: n,
                });
            }
            if let Some(row) = col.iter().position(|v| !v.is_finite()) {
                return Err(DatasetError::NonFiniteCell {
                    row,
                    column: name.clone(),
                });
            }
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || names[..i].contains(name) {
                return Err(DatasetError::BadName(name.clone()));
            }
        }
        if !(labels.contains(&0) && labels.contains(&1)) {
            return Err(DatasetError::SingleClass);
        }
        Ok(Self {
            columns,
            labels,
            names,
        })
    }

    /// Number of rows.
    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    /// Number of feature columns.
    pub fn n_features(&self) -> usize {
        self.columns.len()
    }

    /// Feature column by index.
    pub fn column(&self, index: usize) -> &[f64] {
        &self.columns[index]
    }

    /// All feature columns.
    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    /// Binary labels.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Labels as f64, for measures that take real vectors.
    pub fn labels_f64(&self) -> Vec<f64> {
        self.labels.iter().map(|&y| f64::from(y)).collect()
    }

    /// Feature names.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// One row gathered across columns (allocates).
    pub fn row(&self, index: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[index]).collect()
    }

    /// Dataset restricted to `rows` (in the given order).
    ///
    /// Subsets skip re-validation: finiteness and names carry over, but a
    /// subset of a valid dataset may be single-class. Operations that need
    /// both classes check for themselves.
    pub fn subset_rows(&self, rows: &[usize]) -> Dataset {
        Dataset {
            columns: self
                .columns
                .iter()
                .map(|c| rows.iter().map(|&r| c[r]).collect())
                .collect(),
            labels: rows.iter().map(|&r| self.labels[r]).collect(),
            names: self.names.clone(),
        }
    }

    /// Dataset restricted to the feature columns in `indices` (in order).
    pub fn select_columns(&self, indices: &[usize]) -> Dataset {
        Dataset {
            columns: indices.iter().map(|&i| self.columns[i].clone()).collect(),
            labels: self.labels.clone(),
            names: indices.iter().map(|&i| self.names[i].clone()).collect(),
        }
    }

    /// True when both classes are present.
    pub fn has_both_classes(&self) -> bool {
        self.labels.contains(&0) && self.labels.contains(&1)
    }

    /// Order-independent fingerprint of shape and content, for report
    /// metadata. Not cryptographic.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u64| {
            h = (h ^ x).wrapping_mul(0x0000_0100_0000_01b3);
        };
        eat(self.n_rows() as u64);
        eat(self.n_features() as u64);
        for name in &self.names {
            for b in name.bytes() {
                eat(u64::from(b));
            }
        }
        for col in &self.columns {
            for v in col {
                eat(v.to_bits());
            }
        }
        for &y in &self.labels {
            eat(u64::from(y));
        }
        format!("{h:016x}")
    }
}

/// Fold index per row for k-fold cross-validation.
#[derive(Debug, Clone)]
pub struct FoldAssignment {
    fold_of_row: Vec<usize>,
    k: usize,
}

impl FoldAssignment {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fold_of_row(&self) -> &[usize] {
        &self.fold_of_row
    }

    /// Row indices belonging to `fold`.
    pub fn test_rows(&self, fold: usize) -> Vec<usize> {
        self.fold_of_row
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f == fold)
            .map(|(r, _)| r)
            .collect()
    }

    /// Row indices outside `fold`.
    pub fn train_rows(&self, fold: usize) -> Vec<usize> {
        self.fold_of_row
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f != fold)
            .map(|(r, _)| r)
            .collect()
    }
}

/// Partition rows into `k` near-equal folds by a seeded permutation.
///
/// The first `n % k` folds receive one extra row, so fold sizes differ by at
/// most one. Deterministic in `(n, k, seed)`.
pub fn kfold(dataset: &Dataset, k: usize, seed: u64) -> Result<FoldAssignment, DatasetError> {
    let n = dataset.n_rows();
    if k < 2 || n < k {
        return Err(DatasetError::BadFoldCount { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = permutation(n, &mut rng);

    let base = n / k;
    let extra = n % k;
    let mut fold_of_row = vec![0usize; n];
    let mut cursor = 0;
    for fold in 0..k {
        let size = base + usize::from(fold < extra);
        for &row in &order[cursor..cursor + size] {
            fold_of_row[row] = fold;
        }
        cursor += size;
    }
    Ok(FoldAssignment { fold_of_row, k })
}

/// Unstratified random train/test split.
///
/// The train side gets `round(n * train_fraction)` rows (round half away
/// from zero); rows are assigned by a seeded permutation. Errors if either
/// side would be empty.
pub fn split(
    dataset: &Dataset,
    train_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset), DatasetError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DatasetError::BadFraction(train_fraction));
    }
    let n = dataset.n_rows();
    let n_train = (n as f64 * train_fraction).round() as usize;
    if n_train == 0 || n_train == n {
        return Err(DatasetError::EmptySide {
            n,
            fraction: train_fraction,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = permutation(n, &mut rng);
    let train = dataset.subset_rows(&order[..n_train]);
    let test = dataset.subset_rows(&order[n_train..]);
    Ok((train, test))
}

/// Load a CSV with a header row, treating `label_column` as the class label
/// and every other column as a numeric feature.
pub fn load_csv(path: &Path, label_column: &str) -> Result<Dataset, DatasetError> {
    let display = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| DatasetError::Io {
        path: display.clone(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(file);

    let header: Vec<String> = reader
        .headers()
        .map_err(|source| DatasetError::Csv {
            path: display.clone(),
            source,
        })?
        .iter()
        .map(str::to_owned)
        .collect();
    let label_idx = header
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| DatasetError::MissingLabelColumn(label_column.to_owned()))?;

    let names: Vec<String> = header
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label_idx)
        .map(|(_, h)| h.clone())
        .collect();

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    let mut labels: Vec<u8> = Vec::new();

    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|source| DatasetError::Csv {
            path: display.clone(),
            source,
        })?;
        let mut feature_slot = 0;
        for (i, cell) in record.iter().enumerate() {
            let column = header.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
            let value: f64 =
                cell.trim()
                    .parse()
                    .map_err(|_| DatasetError::NonNumericCell {
                        row,
                        column: column.clone(),
                        value: cell.to_owned(),
                    })?;
            if !value.is_finite() {
                return Err(DatasetError::NonFiniteCell { row, column });
            }
            if i == label_idx {
                if value == 0.0 {
                    labels.push(0);
                } else if value == 1.0 {
                    labels.push(1);
                } else {
                    return Err(DatasetError::LabelOutOfRange { row, value });
                }
            } else {
                columns[feature_slot].push(value);
                feature_slot += 1;
            }
        }
    }

    Dataset::new(columns, labels, names)
}

/// Format one f64 with 17 significant digits, which round-trips exactly for
/// 64-bit values.
pub fn format_cell(value: f64) -> String {
    format!("{value:.16e}")
}

/// Write `dataset` as CSV: header row, features in column order, and the
/// label (as `0`/`1`) in a final column named `label_column`.
pub fn write_csv(
    dataset: &Dataset,
    path: &Path,
    label_column: &str,
) -> Result<(), DatasetError> {
    let io_err = |source: std::io::Error| DatasetError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    let mut out = std::io::BufWriter::new(file);

    let mut line = String::new();
    for name in dataset.names() {
        line.push_str(name);
        line.push(',');
    }
    line.push_str(label_column);
    line.push('\n');
    out.write_all(line.as_bytes()).map_err(io_err)?;

    for row in 0..dataset.n_rows() {
        line.clear();
        for col in dataset.columns() {
            let _ = write!(line, "{},", format_cell(col[row]));
        }
        let _ = writeln!(line, "{}", dataset.labels()[row]);
        out.write_all(line.as_bytes()).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}
