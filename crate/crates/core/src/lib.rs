//! Sorting, binary-search-tree building and heap building expressed as
//! QUBOs over permutation matrices.
//!
//! An input vector `x` and a rank vector (the *program*) compile into a
//! QUBO whose feasible minimizers are the permutation matrices `P` that
//! arrange `P x` in the prescribed order. The QUBO is converted to a
//! Hopfield network and solved by steepest energy descent; brute-force
//! oracles certify the results on small instances.
//!
//! ```
//! use qubo_order::{pipeline, programs, BuilderConfig, SolverConfig, ValueVector};
//!
//! let x = ValueVector::new(vec![46., 52., -12., 33., 10., 51., 24.]).unwrap();
//! let program = programs::heap_program(7, 2).unwrap();
//! let out = pipeline::run(&x, &program, &BuilderConfig::for_size(7), &SolverConfig::default()).unwrap();
//! assert_eq!(out.output(&x).unwrap(), vec![52., 24., 51., -12., 10., 33., 46.]);
//! ```

pub mod builder;
pub mod convert;
pub mod error;
pub mod hopfield;
pub mod io;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod programs;

pub use builder::{build_cc, build_cr, build_n, build_qubo, qubo_objective, BuilderConfig};
pub use convert::{
    binary_to_bipolar, bipolar_to_binary, fold_diagonal, hopfield_from_qubo, to_hopfield,
    to_ising,
};
pub use error::{Error, Result};
pub use hopfield::{energy, flip_gain, solve, solve_with_restarts, InitialState, SolverConfig};
pub use model::{
    apply_permutation, decode_permutation, matricize, vectorize, HopfieldInstance,
    IsingInstance, OrderProgram, PermutationMatrix, ProgramKind, QuboInstance, SolverTrace,
    TraceStep, ValueVector,
};
pub use oracle::{best_permutation, certify, exhaustive_qubo_min, CertificateReport};
pub use programs::{
    ascending_program, bst_program, descending_program, heap_program, validate_bst,
    validate_heap, TreeShape,
};
