//! The self-describing problem-file format.
//!
//! One JSON document names every matrix and vector a command can refer to,
//! plus an optional grid block for metric-field runs:
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "field": "real",
//!   "dim": 2,
//!   "matrices": { "id": [[1, 0], [0, 1]] },
//!   "vectors": { "e1": [1, 0] },
//!   "grid": { "points": [[0.0, 0.0]], "g1": ["id"], "g2": ["id"] }
//! }
//! ```
//!
//! Scalar entries are plain numbers or `[re, im]` pairs; real-field files
//! must keep every imaginary part zero. Grid entries name one matrix per
//! point for each of the two metrics.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use innerspace::{GramForm, MetricFieldSample, Scalar, ScalarField, Tolerances, Vector};

use crate::CliError;

const SUPPORTED_SCHEMA: &str = "1";

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl From<FieldTag> for ScalarField {
    fn from(tag: FieldTag) -> ScalarField {
        match tag {
            FieldTag::Real => ScalarField::Real,
            FieldTag::Complex => ScalarField::Complex,
        }
    }
}

/// A scalar in the file: a bare number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

impl Entry {
    fn to_scalar(self, field: ScalarField, what: &str) -> Result<Scalar, CliError> {
        let z = match self {
            Entry::Real(re) => Scalar::new(re, 0.0),
            Entry::Pair([re, im]) => Scalar::new(re, im),
        };
        if field.is_real() && z.im != 0.0 {
            return Err(CliError::Input(format!(
                "{what}: complex entry in a real-field file"
            )));
        }
        Ok(z)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub points: Vec<Vec<f64>>,
    pub g1: Vec<String>,
    pub g2: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema_version: String,
    pub field: FieldTag,
    pub dim: usize,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<Entry>>>,
    #[serde(default)]
    pub vectors: BTreeMap<String, Vec<Entry>>,
    #[serde(default)]
    pub grid: Option<GridBlock>,
}

impl ProblemFile {
    /// Loads and structurally validates a problem file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let file: ProblemFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: invalid problem file: {e}", path.display())))?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SUPPORTED_SCHEMA {
            return Err(CliError::Input(format!(
                "unsupported schema_version '{}' (expected '{SUPPORTED_SCHEMA}')",
                self.schema_version
            )));
        }
        if self.dim == 0 {
            return Err(CliError::Input("dim must be at least 1".into()));
        }
        for (name, rows) in &self.matrices {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(CliError::Input(format!(
                    "matrix '{name}' is not {0}x{0}",
                    self.dim
                )));
            }
        }
        for (name, entries) in &self.vectors {
            if entries.len() != self.dim {
                return Err(CliError::Input(format!(
                    "vector '{name}' does not have {} entries",
                    self.dim
                )));
            }
        }
        if let Some(grid) = &self.grid {
            if grid.g1.len() != grid.points.len() || grid.g2.len() != grid.points.len() {
                return Err(CliError::Input(
                    "grid: g1 and g2 must name one matrix per point".into(),
                ));
            }
            for (idx, p) in grid.points.iter().enumerate() {
                if p.len() != self.dim {
                    return Err(CliError::Input(format!(
                        "grid point {idx} does not have {} coordinates",
                        self.dim
                    )));
                }
            }
            for name in grid.g1.iter().chain(&grid.g2) {
                if !self.matrices.contains_key(name) {
                    return Err(CliError::Input(format!(
                        "grid references unknown matrix '{name}'"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn scalar_field(&self) -> ScalarField {
        self.field.into()
    }

    /// Builds and validates the named Gram form.
    pub fn form(&self, name: &str, tol: Tolerances) -> Result<GramForm, CliError> {
        let rows = self
            .matrices
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unknown matrix '{name}'")))?;
        let field = self.scalar_field();
        let mut m = innerspace::Matrix::zeros(self.dim, self.dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, &entry) in row.iter().enumerate() {
                m[(i, j)] = entry.to_scalar(field, &format!("matrix '{name}' entry ({i}, {j})"))?;
            }
        }
        GramForm::with_tolerances(field, m, tol)
            .map_err(|e| CliError::Input(format!("matrix '{name}': {e}")))
    }

    pub fn vector(&self, name: &str) -> Result<Vector, CliError> {
        let entries = self
            .vectors
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unknown vector '{name}'")))?;
        let field = self.scalar_field();
        let mut v = Vector::zeros(self.dim);
        for (k, &entry) in entries.iter().enumerate() {
            v[k] = entry.to_scalar(field, &format!("vector '{name}' entry {k}"))?;
        }
        Ok(v)
    }

    /// Assembles the grid block into a metric-field sample.
    pub fn metric_sample(&self, tol: Tolerances) -> Result<MetricFieldSample, CliError> {
        let grid = self
            .grid
            .as_ref()
            .ok_or_else(|| CliError::Input("problem file has no grid block".into()))?;
        let g1 = grid
            .g1
            .iter()
            .map(|name| self.form(name, tol))
            .collect::<Result<Vec<_>, _>>()?;
        let g2 = grid
            .g2
            .iter()
            .map(|name| self.form(name, tol))
            .collect::<Result<Vec<_>, _>>()?;
        MetricFieldSample::new(grid.points.clone(), g1, g2)
            .map_err(|e| CliError::Input(format!("grid: {e}")))
    }
}
