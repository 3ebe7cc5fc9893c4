//! CSV ingestion: header-addressed columns into metric margins. Any
//! malformed row is an error naming the cell; rows are never dropped.

use std::collections::HashSet;
use std::path::Path;

use emcor::dependence::{Margin, PairedSample};
use emcor::metric::{DistanceMatrix, MetricSpec, PointBuffer};

use crate::config::{MetricChoice, SampleArgs};
use crate::error::CliError;

pub struct Dataset {
    headers: Vec<String>,
    rows: Vec<csv::StringRecord>,
}

pub fn read_csv(path: &Path) -> Result<Dataset, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("bad header in {}: {e}", path.display())))?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        rows.push(record.map_err(|e| CliError::Usage(format!("bad row: {e}")))?);
    }
    if rows.is_empty() {
        return Err(CliError::Usage("input file has no data rows".into()));
    }
    Ok(Dataset { headers, rows })
}

impl Dataset {
    fn column_index(&self, name: &str) -> Result<usize, CliError> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Usage(format!("column '{name}' not found in header")))
    }

    fn cell(&self, row: usize, col: usize) -> &str {
        self.rows[row].get(col).unwrap_or("").trim()
    }

    /// Numeric columns as a coordinate buffer of dimension `cols.len()`.
    pub fn coord_buffer(&self, cols: &[String]) -> Result<PointBuffer, CliError> {
        let indices: Vec<usize> = cols
            .iter()
            .map(|c| self.column_index(c))
            .collect::<Result<_, _>>()?;
        let mut data = Vec::with_capacity(self.rows.len() * indices.len());
        for r in 0..self.rows.len() {
            for (&c, name) in indices.iter().zip(cols) {
                let cell = self.cell(r, c);
                let v: f64 = cell.parse().map_err(|_| {
                    CliError::Usage(format!(
                        "row {}, column '{name}': non-numeric cell '{cell}'",
                        r + 1
                    ))
                })?;
                data.push(v);
            }
        }
        PointBuffer::from_flat(indices.len(), data).map_err(CliError::from)
    }

    /// A single column of nonnegative integer indices into a distance matrix.
    pub fn index_buffer(&self, cols: &[String]) -> Result<PointBuffer, CliError> {
        if cols.len() != 1 {
            return Err(CliError::Usage(
                "a precomputed-matrix margin takes exactly one index column".into(),
            ));
        }
        let c = self.column_index(&cols[0])?;
        let mut indices = Vec::with_capacity(self.rows.len());
        for r in 0..self.rows.len() {
            let cell = self.cell(r, c);
            let v: usize = cell.parse().map_err(|_| {
                CliError::Usage(format!(
                    "row {}, column '{}': expected a point index, got '{cell}'",
                    r + 1,
                    cols[0]
                ))
            })?;
            indices.push(v);
        }
        PointBuffer::from_indices(indices).map_err(CliError::from)
    }

    pub fn margin(&self, cols: &[String], choice: &MetricChoice) -> Result<Margin, CliError> {
        let (points, metric) = match choice {
            MetricChoice::Euclidean => (
                self.coord_buffer(cols)?,
                MetricSpec::euclidean(cols.len())?,
            ),
            MetricChoice::Manhattan => (
                self.coord_buffer(cols)?,
                MetricSpec::manhattan(cols.len())?,
            ),
            MetricChoice::Discrete => (
                self.coord_buffer(cols)?,
                MetricSpec::discrete(cols.len())?,
            ),
            MetricChoice::Matrix(path) => (
                self.index_buffer(cols)?,
                MetricSpec::precomputed(DistanceMatrix::load(path)?),
            ),
        };
        Margin::new(points, metric).map_err(CliError::from)
    }
}

fn check_disjoint(args: &SampleArgs) -> Result<(), CliError> {
    let mut seen = HashSet::new();
    for col in args
        .x_cols
        .iter()
        .chain(&args.y_cols)
        .chain(&args.z_cols)
    {
        if !seen.insert(col.as_str()) {
            return Err(CliError::Usage(format!(
                "column '{col}' selected for more than one margin"
            )));
        }
    }
    Ok(())
}

/// Full ingestion path for sample-based subcommands.
pub fn parse_dataset(args: &SampleArgs) -> Result<PairedSample, CliError> {
    check_disjoint(args)?;
    let data = read_csv(&args.input)?;
    let x = data.margin(&args.x_cols, &args.metric_x)?;
    let y = data.margin(&args.y_cols, &args.metric_y)?;
    if args.z_cols.is_empty() {
        PairedSample::new(x, y).map_err(CliError::from)
    } else {
        let z = data.margin(&args.z_cols, &args.metric_z)?;
        PairedSample::with_z(x, y, z).map_err(CliError::from)
    }
}
