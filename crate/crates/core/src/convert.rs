//! Binary/bipolar conversions: QUBO -> Ising -> Hopfield.
//!
//! Constant offsets produced by the change of variables are dropped; every
//! map preserves the ordering of states by energy.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::model::{HopfieldInstance, IsingInstance, QuboInstance};

/// Moves the diagonal of `R` into the linear term (`z_i^2 = z_i` on binary
/// states). Objective values are unchanged on every binary vector.
pub fn fold_diagonal(inst: &QuboInstance) -> QuboInstance {
    let diag = inst.matrix().diag().to_owned();
    let mut matrix = inst.matrix().clone();
    matrix.diag_mut().fill(0.0);
    let linear = inst.linear() + &diag;
    QuboInstance::from_parts(matrix, linear, inst.lambda_r(), inst.lambda_c())
        .expect("folding preserves shape and symmetry")
}

/// `Q = R / 4`, `q = R 1 / 2 + r / 2`. The diagonal must already be folded.
pub fn to_ising(inst: &QuboInstance) -> Result<IsingInstance> {
    if let Some(index) = inst.matrix().diag().iter().position(|&d| d != 0.0) {
        return Err(Error::NonZeroDiagonal { index });
    }
    let couplings = inst.matrix() / 4.0;
    let fields = inst.matrix().sum_axis(ndarray::Axis(1)) / 2.0 + inst.linear() / 2.0;
    IsingInstance::new(couplings, fields)
}

/// The constant `Ising(2z - 1) - QUBO(z)` is `-(1^T R 1 / 4 + r^T 1 / 2)`;
/// this returns the value that must be added to an Ising energy to recover
/// the QUBO objective.
pub fn ising_offset(inst: &QuboInstance) -> f64 {
    inst.matrix().sum() / 4.0 + inst.linear().sum() / 2.0
}

/// `W = -2 Q`, `theta = q`.
pub fn to_hopfield(ising: &IsingInstance) -> HopfieldInstance {
    let weights: Array2<f64> = ising.couplings() * -2.0;
    let bias: Array1<f64> = ising.fields().clone();
    HopfieldInstance::new(weights, bias).expect("Ising couplings are symmetric with zero diagonal")
}

/// Full chain used by the solver: fold, convert to Ising, then to Hopfield.
pub fn hopfield_from_qubo(inst: &QuboInstance) -> HopfieldInstance {
    let ising = to_ising(&fold_diagonal(inst)).expect("diagonal was folded");
    to_hopfield(&ising)
}

/// `s = 2 z - 1`.
pub fn binary_to_bipolar(z: &[u8]) -> Result<Vec<i8>> {
    z.iter()
        .enumerate()
        .map(|(i, &v)| match v {
            0 => Ok(-1),
            1 => Ok(1),
            other => Err(Error::DomainError {
                index: i,
                value: i64::from(other),
            }),
        })
        .collect()
}

/// `z = (s + 1) / 2`.
pub fn bipolar_to_binary(s: &[i8]) -> Result<Vec<u8>> {
    s.iter()
        .enumerate()
        .map(|(i, &v)| match v {
            -1 => Ok(0),
            1 => Ok(1),
            other => Err(Error::DomainError {
                index: i,
                value: i64::from(other),
            }),
        })
        .collect()
}
