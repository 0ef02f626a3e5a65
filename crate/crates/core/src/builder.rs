//! Compiles a value vector and an order program into a QUBO over `n^2`
//! binary variables.
//!
//! The linear objective `-x^T N z` rewards placing large inputs at slots
//! holding large ranks. The row- and column-sum constraints `C_r z = 1`,
//! `C_c z = 1` enter as squared penalties weighted by `lambda_r` and
//! `lambda_c`; their constant term `<1, 1>` is dropped.

use ndarray::linalg::kron;
use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::model::{OrderProgram, QuboInstance, ValueVector};

/// Penalty weights and input conditioning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuilderConfig {
    lambda_r: f64,
    lambda_c: f64,
    normalize: bool,
}

impl BuilderConfig {
    pub fn new(lambda_r: f64, lambda_c: f64, normalize: bool) -> Result<Self> {
        for (name, v) in [("lambda_r", lambda_r), ("lambda_c", lambda_c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            lambda_r,
            lambda_c,
            normalize,
        })
    }

    /// `lambda_r = lambda_c = n` with L1 normalization of the input.
    pub fn for_size(n: usize) -> Self {
        let lambda = n.max(1) as f64;
        Self {
            lambda_r: lambda,
            lambda_c: lambda,
            normalize: true,
        }
    }

    pub fn lambda_r(&self) -> f64 {
        self.lambda_r
    }

    pub fn lambda_c(&self) -> f64 {
        self.lambda_c
    }

    pub fn normalize(&self) -> bool {
        self.normalize
    }
}

fn ones_row(n: usize) -> Array2<f64> {
    Array2::ones((1, n))
}

/// `N = I ⊗ n^T`, an `n x n^2` block-diagonal matrix.
pub fn build_n(program: &OrderProgram) -> Array2<f64> {
    let n = program.len();
    let ranks = program.rank_vector().insert_axis(ndarray::Axis(0));
    kron(&Array2::eye(n), &ranks)
}

/// `C_r = 1^T ⊗ I`; `C_r vec(Z) = Z 1`.
pub fn build_cr(n: usize) -> Array2<f64> {
    kron(&ones_row(n), &Array2::eye(n))
}

/// `C_c = I ⊗ 1^T`; `C_c vec(Z) = Z^T 1`.
pub fn build_cc(n: usize) -> Array2<f64> {
    kron(&Array2::eye(n), &ones_row(n))
}

/// Assembles `R = lr C_r^T C_r + lc C_c^T C_c` and
/// `r = -N^T x - 2 (lr C_r + lc C_c)^T 1`, where `x` is the normalized
/// input when `cfg.normalize()` is set.
pub fn build_qubo(
    x: &ValueVector,
    program: &OrderProgram,
    cfg: &BuilderConfig,
) -> Result<QuboInstance> {
    let n = program.len();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let input: Array1<f64> = if cfg.normalize {
        Array1::from(x.normalized().ok_or(Error::ZeroVector)?.to_vec())
    } else {
        Array1::from(x.entries().to_vec())
    };

    let (lr, lc) = (cfg.lambda_r, cfg.lambda_c);
    let big_n = build_n(program);
    let cr = build_cr(n);
    let cc = build_cc(n);

    let matrix = cr.t().dot(&cr) * lr + cc.t().dot(&cc) * lc;
    let penalty_rows = &cr * lr + &cc * lc;
    let linear = -big_n.t().dot(&input) - penalty_rows.t().dot(&Array1::ones(n)) * 2.0;

    QuboInstance::from_parts(matrix, linear, lr, lc)
}

/// `z^T R z + r^T z` for a binary state `z`.
pub fn qubo_objective(inst: &QuboInstance, z: &[u8]) -> Result<f64> {
    if z.len() != inst.dimension() {
        return Err(Error::DimensionMismatch {
            expected: inst.dimension(),
            found: z.len(),
        });
    }
    if let Some(i) = z.iter().position(|&v| v > 1) {
        return Err(Error::DomainError {
            index: i,
            value: i64::from(z[i]),
        });
    }
    let zv: Array1<f64> = z.iter().map(|&v| f64::from(v)).collect();
    Ok(zv.dot(&inst.matrix().dot(&zv)) + inst.linear().dot(&zv))
}
