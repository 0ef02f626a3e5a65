//! Domain types shared by the builder, the solvers, the oracle and the CLI.
//!
//! Matrices are `ndarray` arrays. Vectorization always stacks columns, so
//! entry `(row, col)` of an `n x n` matrix lands at index `col * n + row`.

use ndarray::{Array1, Array2, ShapeBuilder};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Absolute/relative tolerance used for symmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// The numbers to be arranged, together with their L1-normalized form.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueVector {
    entries: Vec<f64>,
    normalized: Option<Vec<f64>>,
}

impl ValueVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidSize(0));
        }
        if let Some(i) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let l1: f64 = entries.iter().map(|v| v.abs()).sum();
        let normalized = (l1 > 0.0).then(|| entries.iter().map(|v| v / l1).collect());
        Ok(Self { entries, normalized })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `x / sum |x_j|`, or `None` for the all-zero vector.
    pub fn normalized(&self) -> Option<&[f64]> {
        self.normalized.as_deref()
    }

    /// True if two entries compare equal.
    pub fn has_ties(&self) -> bool {
        let mut sorted = self.entries.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).any(|w| w[0] == w[1])
    }
}

/// Which target structure an [`OrderProgram`] encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProgramKind {
    Ascending,
    Descending,
    Bst,
    Heap,
    Custom,
}

impl ProgramKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProgramKind::Ascending => "ascending",
            ProgramKind::Descending => "descending",
            ProgramKind::Bst => "bst",
            ProgramKind::Heap => "heap",
            ProgramKind::Custom => "custom",
        }
    }
}

impl fmt::Display for ProgramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ProgramKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascending" => Ok(ProgramKind::Ascending),
            "descending" => Ok(ProgramKind::Descending),
            "bst" => Ok(ProgramKind::Bst),
            "heap" => Ok(ProgramKind::Heap),
            "custom" => Ok(ProgramKind::Custom),
            other => Err(Error::InvalidProgram(format!("unknown kind {other:?}"))),
        }
    }
}

/// The rank vector that tells the QUBO which arrangement to produce.
///
/// Slot `i` of the output receives the input whose rank among all inputs
/// equals `ranks[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderProgram {
    ranks: Vec<usize>,
    kind: ProgramKind,
    branching: usize,
}

impl OrderProgram {
    /// Validates that `ranks` is a permutation of `1..=n`.
    pub fn new(ranks: Vec<usize>, kind: ProgramKind, branching: usize) -> Result<Self> {
        let n = ranks.len();
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        if branching < 2 {
            return Err(Error::InvalidProgram(format!(
                "branching factor must be at least 2, got {branching}"
            )));
        }
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r == 0 || r > n || std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::InvalidProgram(format!(
                    "ranks must be a permutation of 1..={n}, got {ranks:?}"
                )));
            }
        }
        Ok(Self { ranks, kind, branching })
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn kind(&self) -> ProgramKind {
        self.kind
    }

    pub fn branching(&self) -> usize {
        self.branching
    }

    /// Ranks as floating point, the form used by the builder.
    pub fn rank_vector(&self) -> Array1<f64> {
        self.ranks.iter().map(|&r| r as f64).collect()
    }
}

/// A QUBO `min z^T R z + r^T z` over `N = n^2` binary variables.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboInstance {
    matrix: Array2<f64>,
    linear: Array1<f64>,
    lambda_r: f64,
    lambda_c: f64,
    source_n: usize,
}

impl QuboInstance {
    /// Builds an instance from raw parts. `matrix` must be square and
    /// symmetric, its side a perfect square, and `linear` of matching length.
    pub fn from_parts(
        matrix: Array2<f64>,
        linear: Array1<f64>,
        lambda_r: f64,
        lambda_c: f64,
    ) -> Result<Self> {
        let dim = check_square_symmetric(&matrix)?;
        if linear.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: linear.len(),
            });
        }
        let source_n = exact_sqrt(dim).ok_or(Error::NonSquareLength(dim))?;
        Ok(Self {
            matrix,
            linear,
            lambda_r,
            lambda_c,
            source_n,
        })
    }

    /// Number of binary variables `N`.
    pub fn dimension(&self) -> usize {
        self.linear.len()
    }

    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn linear(&self) -> &Array1<f64> {
        &self.linear
    }

    pub fn lambda_r(&self) -> f64 {
        self.lambda_r
    }

    pub fn lambda_c(&self) -> f64 {
        self.lambda_c
    }
}

/// Bipolar form `min s^T Q s + q^T s`, with `Q` symmetric and zero-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingInstance {
    couplings: Array2<f64>,
    fields: Array1<f64>,
}

impl IsingInstance {
    pub fn new(couplings: Array2<f64>, fields: Array1<f64>) -> Result<Self> {
        let dim = check_square_symmetric(&couplings)?;
        check_zero_diagonal(&couplings)?;
        if fields.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: fields.len(),
            });
        }
        Ok(Self { couplings, fields })
    }

    pub fn dimension(&self) -> usize {
        self.fields.len()
    }

    pub fn couplings(&self) -> &Array2<f64> {
        &self.couplings
    }

    pub fn fields(&self) -> &Array1<f64> {
        &self.fields
    }

    /// `s^T Q s + q^T s`.
    pub fn energy(&self, spins: &[i8]) -> Result<f64> {
        if spins.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: spins.len(),
            });
        }
        let s: Array1<f64> = spins.iter().map(|&v| f64::from(v)).collect();
        Ok(s.dot(&self.couplings.dot(&s)) + self.fields.dot(&s))
    }
}

/// Hopfield network with energy `-1/2 s^T W s + theta^T s`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfieldInstance {
    weights: Array2<f64>,
    bias: Array1<f64>,
}

impl HopfieldInstance {
    pub fn new(weights: Array2<f64>, bias: Array1<f64>) -> Result<Self> {
        let dim = check_square_symmetric(&weights)?;
        check_zero_diagonal(&weights)?;
        if bias.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bias.len(),
            });
        }
        Ok(Self { weights, bias })
    }

    pub fn dimension(&self) -> usize {
        self.bias.len()
    }

    pub fn weights(&self) -> &Array2<f64> {
        &self.weights
    }

    pub fn bias(&self) -> &Array1<f64> {
        &self.bias
    }
}

/// A permutation matrix, stored as the column index of the single 1 in
/// each row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationMatrix {
    mapping: Vec<usize>,
}

impl PermutationMatrix {
    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for (row, &col) in mapping.iter().enumerate() {
            if col >= n {
                return Err(Error::NotAPermutation(format!(
                    "row {row} points at column {col} of {n}"
                )));
            }
            if std::mem::replace(&mut seen[col], true) {
                return Err(Error::NotAPermutation(format!("column {col} used twice")));
            }
        }
        Ok(Self { mapping })
    }

    /// Accepts any square 0/1 matrix whose rows and columns each sum to one.
    pub fn from_matrix(matrix: &Array2<u8>) -> Result<Self> {
        let (rows, cols) = matrix.dim();
        if rows != cols {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: cols,
            });
        }
        if let Some(v) = matrix.iter().find(|&&v| v > 1) {
            return Err(Error::NotAPermutation(format!("non-binary entry {v}")));
        }
        for (i, row) in matrix.rows().into_iter().enumerate() {
            let sum: usize = row.iter().map(|&v| usize::from(v)).sum();
            if sum != 1 {
                return Err(Error::NotAPermutation(format!("row {i} sums to {sum}")));
            }
        }
        for (j, col) in matrix.columns().into_iter().enumerate() {
            let sum: usize = col.iter().map(|&v| usize::from(v)).sum();
            if sum != 1 {
                return Err(Error::NotAPermutation(format!("column {j} sums to {sum}")));
            }
        }
        let mapping = matrix
            .rows()
            .into_iter()
            .map(|row| row.iter().position(|&v| v == 1).expect("row sums to one"))
            .collect();
        Ok(Self { mapping })
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    pub fn as_mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn matrix(&self) -> Array2<u8> {
        let n = self.size();
        let mut m = Array2::zeros((n, n));
        for (row, &col) in self.mapping.iter().enumerate() {
            m[[row, col]] = 1;
        }
        m
    }

    /// The binary state `vec(P)` that [`decode_permutation`] maps back to `self`.
    pub fn encode(&self) -> Vec<u8> {
        let n = self.size();
        let mut z = vec![0u8; n * n];
        for (row, &col) in self.mapping.iter().enumerate() {
            z[col * n + row] = 1;
        }
        z
    }
}

/// One row of a solver trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub t: usize,
    pub state: Vec<i8>,
    pub energy: f64,
}

/// Time-indexed record of a descent run. The final row repeats the stable
/// state once the dynamics have converged.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolverTrace {
    pub steps: Vec<TraceStep>,
    pub converged: bool,
    pub flips: usize,
}

impl SolverTrace {
    pub fn energies(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.energy).collect()
    }

    pub fn final_state(&self) -> Option<&[i8]> {
        self.steps.last().map(|s| s.state.as_slice())
    }
}

/// Stacks the columns of `m` into a vector.
pub fn vectorize(m: &Array2<f64>) -> Array1<f64> {
    m.t().iter().copied().collect()
}

/// Inverse of [`vectorize`]; the length must be a perfect square.
pub fn matricize(v: &Array1<f64>) -> Result<Array2<f64>> {
    let n = exact_sqrt(v.len()).ok_or(Error::NonSquareLength(v.len()))?;
    let m = Array2::from_shape_vec((n, n).f(), v.to_vec()).expect("length checked");
    Ok(m.as_standard_layout().into_owned())
}

/// Reads a binary solver state as the permutation matrix `mat(z)`.
///
/// Row `i` of the result holds a 1 in column `j` iff `z[j * n + i] == 1`, so
/// the ordered output is `y = P x`. Infeasible states are rejected, not
/// repaired.
pub fn decode_permutation(z: &[u8]) -> Result<PermutationMatrix> {
    let n = exact_sqrt(z.len()).ok_or(Error::NonSquareLength(z.len()))?;
    if let Some(i) = z.iter().position(|&v| v > 1) {
        return Err(Error::DomainError {
            index: i,
            value: i64::from(z[i]),
        });
    }
    let m = Array2::from_shape_vec((n, n).f(), z.to_vec()).expect("length checked");
    PermutationMatrix::from_matrix(&m)
}

/// `y = P x` in the original (un-normalized) units.
pub fn apply_permutation(p: &PermutationMatrix, x: &ValueVector) -> Result<Vec<f64>> {
    if p.size() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: p.size(),
            found: x.len(),
        });
    }
    Ok(p.as_mapping().iter().map(|&j| x.entries()[j]).collect())
}

pub(crate) fn exact_sqrt(len: usize) -> Option<usize> {
    let mut n = (len as f64).sqrt() as usize;
    while n * n > len {
        n -= 1;
    }
    while (n + 1) * (n + 1) <= len {
        n += 1;
    }
    (n * n == len).then_some(n)
}

fn check_square_symmetric(m: &Array2<f64>) -> Result<usize> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: cols,
        });
    }
    for i in 0..rows {
        for j in (i + 1)..cols {
            let (a, b) = (m[[i, j]], m[[j, i]]);
            let scale = 1f64.max(a.abs()).max(b.abs());
            if (a - b).abs() > SYMMETRY_TOL * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(rows)
}

fn check_zero_diagonal(m: &Array2<f64>) -> Result<()> {
    match m.diag().iter().position(|&d| d != 0.0) {
        Some(index) => Err(Error::NonZeroDiagonal { index }),
        None => Ok(()),
    }
}
