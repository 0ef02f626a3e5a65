//! JSON file formats and trace rendering.
//!
//! Program file:
//! `{"n": 7, "kind": "heap", "branching": 2, "ranks": [7,3,6,1,2,4,5]}`
//!
//! QUBO file (`R` row-major, full symmetric matrix):
//! `{"n": 2, "lambda_r": 2.0, "lambda_c": 2.0, "normalized": true, "R": [[...]], "r": [...]}`
//! plus the optional keys `x` and `ranks`, which record the inputs the
//! instance was built from so a solver can report ordered values.
//!
//! Trace lines: the step index right-aligned to width 4, two spaces, the
//! state as `-`/`+` glyphs separated by single spaces, two spaces, and the
//! energy with one decimal.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{OrderProgram, ProgramKind, QuboInstance, SolverTrace, ValueVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgramFile {
    pub n: usize,
    pub kind: ProgramKind,
    pub branching: usize,
    pub ranks: Vec<usize>,
}

impl From<&OrderProgram> for ProgramFile {
    fn from(p: &OrderProgram) -> Self {
        Self {
            n: p.len(),
            kind: p.kind(),
            branching: p.branching(),
            ranks: p.ranks().to_vec(),
        }
    }
}

impl TryFrom<ProgramFile> for OrderProgram {
    type Error = Error;

    fn try_from(f: ProgramFile) -> Result<Self> {
        if f.n != f.ranks.len() {
            return Err(Error::DimensionMismatch {
                expected: f.n,
                found: f.ranks.len(),
            });
        }
        OrderProgram::new(f.ranks, f.kind, f.branching)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuboFile {
    pub n: usize,
    pub lambda_r: f64,
    pub lambda_c: f64,
    pub normalized: bool,
    #[serde(rename = "R")]
    pub matrix: Vec<Vec<f64>>,
    pub r: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<usize>>,
}

impl QuboFile {
    pub fn from_instance(inst: &QuboInstance, normalized: bool) -> Self {
        Self {
            n: inst.source_n(),
            lambda_r: inst.lambda_r(),
            lambda_c: inst.lambda_c(),
            normalized,
            matrix: inst.matrix().rows().into_iter().map(|r| r.to_vec()).collect(),
            r: inst.linear().to_vec(),
            x: None,
            ranks: None,
        }
    }

    pub fn to_instance(&self) -> Result<QuboInstance> {
        let dim = self.n * self.n;
        if self.r.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.r.len(),
            });
        }
        if self.matrix.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.matrix.len(),
            });
        }
        if let Some(row) = self.matrix.iter().find(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: row.len(),
            });
        }
        let flat: Vec<f64> = self.matrix.iter().flatten().copied().collect();
        let matrix = Array2::from_shape_vec((dim, dim), flat).expect("shape checked");
        QuboInstance::from_parts(matrix, Array1::from(self.r.clone()), self.lambda_r, self.lambda_c)
    }

    pub fn values(&self) -> Option<Result<ValueVector>> {
        self.x.clone().map(ValueVector::new)
    }
}

/// Parses input numbers given either as a JSON array or one number per line
/// (blank lines and `#` comments ignored).
pub fn parse_values(text: &str) -> Result<ValueVector> {
    let trimmed = text.trim_start();
    let entries: Vec<f64> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed)
            .map_err(|e| Error::InvalidConfig(format!("bad JSON value list: {e}")))?
    } else {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.parse::<f64>()
                    .map_err(|e| Error::InvalidConfig(format!("bad number {l:?}: {e}")))
            })
            .collect::<Result<_>>()?
    };
    ValueVector::new(entries)
}

pub fn render_state(state: &[i8]) -> String {
    state
        .iter()
        .map(|&v| if v > 0 { "+" } else { "-" })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_trace(trace: &SolverTrace) -> String {
    trace
        .steps
        .iter()
        .map(|step| {
            format!(
                "{:>4}  {}  {:.1}\n",
                step.t,
                render_state(&step.state),
                step.energy
            )
        })
        .collect()
}
