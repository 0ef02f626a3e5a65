//! Brute-force ground truth: every permutation for the ordering objective,
//! every binary state for the QUBO.

use itertools::Itertools;
use serde::Serialize;

use crate::builder::BuilderConfig;
use crate::convert::bipolar_to_binary;
use crate::error::{Error, Result};
use crate::model::{apply_permutation, decode_permutation, OrderProgram, PermutationMatrix, ProgramKind, QuboInstance, ValueVector};
use crate::programs::{validate_bst, validate_heap, TreeShape};

/// Largest `n` accepted by [`best_permutation`] (`10! = 3628800` candidates).
pub const MAX_PERMUTATION_SIZE: usize = 10;
/// Largest `N` accepted by [`exhaustive_qubo_min`].
pub const MAX_QUBO_VARIABLES: usize = 20;

const TIE_TOL: f64 = 1e-12;
const OPTIMALITY_TOL: f64 = 1e-9;

fn tied(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// `-<P x, ranks>`, the quantity the QUBO minimizes over feasible states.
pub fn ordering_objective(x: &[f64], p: &PermutationMatrix, program: &OrderProgram) -> Result<f64> {
    if x.len() != p.size() || x.len() != program.len() {
        return Err(Error::DimensionMismatch {
            expected: program.len(),
            found: x.len(),
        });
    }
    Ok(-p
        .as_mapping()
        .iter()
        .zip(program.ranks())
        .map(|(&j, &rank)| x[j] * rank as f64)
        .sum::<f64>())
}

/// Enumerates all `n!` permutations in lexicographic order of their
/// mapping and returns the first one attaining the minimum of
/// [`ordering_objective`] on the raw entries.
pub fn best_permutation(x: &ValueVector, program: &OrderProgram) -> Result<(PermutationMatrix, f64)> {
    let n = program.len();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if n > MAX_PERMUTATION_SIZE {
        return Err(Error::SizeBudgetExceeded {
            size: n,
            limit: MAX_PERMUTATION_SIZE,
        });
    }
    let xs = x.entries();
    let ranks = program.ranks();
    let mut best: Option<(Vec<usize>, f64)> = None;
    for mapping in (0..n).permutations(n) {
        let value = -mapping
            .iter()
            .zip(ranks)
            .map(|(&j, &rank)| xs[j] * rank as f64)
            .sum::<f64>();
        let improves = match &best {
            None => true,
            Some((_, b)) => value < *b && !tied(value, *b, TIE_TOL),
        };
        if improves {
            best = Some((mapping, value));
        }
    }
    let (mapping, value) = best.expect("n >= 1 yields at least one permutation");
    Ok((PermutationMatrix::from_mapping(mapping)?, value))
}

/// Global minimum of `z^T R z + r^T z` over all `2^N` binary states.
///
/// States are walked in Gray-code order with an incrementally maintained
/// `R z`. Ties go to the smallest encoding `sum_k z_k 2^k`. The returned
/// value is re-evaluated directly on the winning state.
pub fn exhaustive_qubo_min(inst: &QuboInstance) -> Result<(Vec<u8>, f64)> {
    let dim = inst.dimension();
    if dim > MAX_QUBO_VARIABLES {
        return Err(Error::SizeBudgetExceeded {
            size: dim,
            limit: MAX_QUBO_VARIABLES,
        });
    }
    let r = inst.matrix();
    let lin = inst.linear();
    let mut z = vec![0u8; dim];
    let mut rz = vec![0.0; dim];
    let mut value = 0.0;
    let mut code: u64 = 0;
    let mut best = (0u64, 0.0f64);

    for step in 1u64..(1u64 << dim) {
        let i = step.trailing_zeros() as usize;
        let rii = r[[i, i]];
        if z[i] == 0 {
            value += 2.0 * rz[i] + rii + lin[i];
            z[i] = 1;
            for (acc, &rji) in rz.iter_mut().zip(r.column(i)) {
                *acc += rji;
            }
        } else {
            value -= 2.0 * rz[i] - rii + lin[i];
            z[i] = 0;
            for (acc, &rji) in rz.iter_mut().zip(r.column(i)) {
                *acc -= rji;
            }
        }
        code ^= 1 << i;
        let (best_code, best_value) = best;
        if tied(value, best_value, OPTIMALITY_TOL) {
            if code < best_code {
                best = (code, value);
            }
        } else if value < best_value {
            best = (code, value);
        }
    }

    let zs: Vec<u8> = (0..dim).map(|k| ((best.0 >> k) & 1) as u8).collect();
    let exact = crate::builder::qubo_objective(inst, &zs)?;
    Ok((zs, exact))
}

/// Outcome of checking one solver state against the oracles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub kind: ProgramKind,
    /// State decodes to a permutation matrix.
    pub feasible: bool,
    pub mapping: Option<Vec<usize>>,
    /// `P x` in the caller's units.
    pub output: Option<Vec<f64>>,
    pub achieved_objective: Option<f64>,
    pub optimal_objective: f64,
    pub optimal: bool,
    /// `None` when no structural check applies.
    pub structure_valid: Option<bool>,
    /// The input contains equal values, so several arrangements are optimal.
    pub objective_tie: bool,
    pub lambda_r: f64,
    pub lambda_c: f64,
    pub notes: Vec<String>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.feasible && self.optimal && self.structure_valid != Some(false)
    }
}

/// Decodes a bipolar solver state and checks feasibility, optimality
/// against [`best_permutation`], and the tree/heap property where the
/// program kind calls for one. Decoding failures are reported, not raised.
pub fn certify(
    x: &ValueVector,
    program: &OrderProgram,
    cfg: &BuilderConfig,
    solver_state: &[i8],
) -> Result<CertificateReport> {
    let (_, optimal_objective) = best_permutation(x, program)?;
    let mut report = CertificateReport {
        kind: program.kind(),
        feasible: false,
        mapping: None,
        output: None,
        achieved_objective: None,
        optimal_objective,
        optimal: false,
        structure_valid: None,
        objective_tie: x.has_ties(),
        lambda_r: cfg.lambda_r(),
        lambda_c: cfg.lambda_c(),
        notes: Vec::new(),
    };
    if report.objective_tie {
        report.notes.push("objective-tie: input has equal values; any optimal arrangement is accepted".into());
    }

    let decoded = bipolar_to_binary(solver_state)
        .and_then(|z| {
            if z.len() != program.len() * program.len() {
                return Err(Error::DimensionMismatch {
                    expected: program.len() * program.len(),
                    found: z.len(),
                });
            }
            Ok(z)
        })
        .and_then(|z| decode_permutation(&z));
    let p = match decoded {
        Ok(p) => p,
        Err(e) => {
            report.notes.push(format!("infeasible: {e}"));
            return Ok(report);
        }
    };
    report.feasible = true;
    let achieved = ordering_objective(x.entries(), &p, program)?;
    let output = apply_permutation(&p, x)?;
    report.optimal = tied(achieved, optimal_objective, OPTIMALITY_TOL);
    report.achieved_objective = Some(achieved);

    let n = program.len();
    report.structure_valid = match program.kind() {
        ProgramKind::Bst if report.objective_tie => {
            report.notes.push("search-tree check skipped: equal values cannot satisfy strict ordering".into());
            None
        }
        ProgramKind::Bst => Some(validate_bst(&output, &TreeShape::new(n, 2)?)),
        ProgramKind::Heap => Some(validate_heap(&output, &TreeShape::new(n, program.branching())?)),
        _ => None,
    };
    report.mapping = Some(p.as_mapping().to_vec());
    report.output = Some(output);
    Ok(report)
}
