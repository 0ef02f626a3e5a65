//! Compile, solve and decode in one call.

use crate::builder::{build_qubo, BuilderConfig};
use crate::convert::{bipolar_to_binary, hopfield_from_qubo};
use crate::error::Result;
use crate::hopfield::{solve_with_restarts, SolverConfig};
use crate::model::{
    apply_permutation, decode_permutation, HopfieldInstance, OrderProgram, PermutationMatrix,
    QuboInstance, SolverTrace, ValueVector,
};

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub qubo: QuboInstance,
    pub hopfield: HopfieldInstance,
    pub state: Vec<i8>,
    pub trace: SolverTrace,
    pub attempts: usize,
    /// `None` if the final state is not a permutation encoding.
    pub permutation: Option<PermutationMatrix>,
}

impl PipelineOutcome {
    pub fn output(&self, x: &ValueVector) -> Option<Vec<f64>> {
        self.permutation
            .as_ref()
            .and_then(|p| apply_permutation(p, x).ok())
    }
}

/// Decodes a bipolar state, returning `None` when it is infeasible.
pub fn decode_bipolar(state: &[i8]) -> Option<PermutationMatrix> {
    bipolar_to_binary(state)
        .ok()
        .and_then(|z| decode_permutation(&z).ok())
}

/// Solves an already-built instance. Restarts fire when the converged state
/// does not decode to a permutation.
pub fn solve_instance(qubo: QuboInstance, solver: &SolverConfig) -> Result<PipelineOutcome> {
    let hopfield = hopfield_from_qubo(&qubo);
    let out = solve_with_restarts(&hopfield, solver, |s| decode_bipolar(s).is_some())?;
    let permutation = decode_bipolar(&out.state);
    Ok(PipelineOutcome {
        qubo,
        hopfield,
        state: out.state,
        trace: out.trace,
        attempts: out.attempts,
        permutation,
    })
}

pub fn run(
    x: &ValueVector,
    program: &OrderProgram,
    builder: &BuilderConfig,
    solver: &SolverConfig,
) -> Result<PipelineOutcome> {
    solve_instance(build_qubo(x, program, builder)?, solver)
}
