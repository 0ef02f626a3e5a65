//! Steepest energy descent on a Hopfield network.
//!
//! Each step flips the single neuron whose flip lowers the energy the most
//! (lowest index wins ties). The run stops once no flip lowers the energy;
//! the trace then repeats the stable state as its last row.

use ndarray::Array1;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::model::{HopfieldInstance, SolverTrace, TraceStep};

/// Where a run starts.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    /// Every neuron at -1.
    AllInactive,
    Given(Vec<i8>),
    Random(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub initial_state: InitialState,
    /// Flip budget; `None` means `N^2`.
    pub max_steps: Option<usize>,
    /// Extra runs from seeded random states when the first result is rejected.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            initial_state: InitialState::AllInactive,
            max_steps: None,
            restarts: 0,
            seed: 0,
        }
    }
}

impl SolverConfig {
    fn budget(&self, dim: usize) -> Result<usize> {
        match self.max_steps {
            Some(0) => Err(Error::InvalidConfig("max_steps must be at least 1".into())),
            Some(m) => Ok(m),
            None => Ok((dim * dim).max(1)),
        }
    }
}

/// Result of [`solve_with_restarts`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub state: Vec<i8>,
    pub trace: SolverTrace,
    /// Runs performed, including the first.
    pub attempts: usize,
    /// Whether the returned state passed the caller's check.
    pub accepted: bool,
}

fn check_state(inst: &HopfieldInstance, s: &[i8]) -> Result<()> {
    if s.len() != inst.dimension() {
        return Err(Error::DimensionMismatch {
            expected: inst.dimension(),
            found: s.len(),
        });
    }
    if let Some(i) = s.iter().position(|&v| v != 1 && v != -1) {
        return Err(Error::DomainError {
            index: i,
            value: i64::from(s[i]),
        });
    }
    Ok(())
}

fn as_f64(s: &[i8]) -> Array1<f64> {
    s.iter().map(|&v| f64::from(v)).collect()
}

/// `-1/2 s^T W s + theta^T s`.
pub fn energy(inst: &HopfieldInstance, s: &[i8]) -> Result<f64> {
    check_state(inst, s)?;
    let sv = as_f64(s);
    Ok(-0.5 * sv.dot(&inst.weights().dot(&sv)) + inst.bias().dot(&sv))
}

/// `E(s with s_i negated) - E(s)` in `O(N)`.
pub fn flip_gain(inst: &HopfieldInstance, s: &[i8], i: usize) -> Result<f64> {
    check_state(inst, s)?;
    if i >= s.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: s.len(),
        });
    }
    let field: f64 = inst
        .weights()
        .row(i)
        .iter()
        .zip(s)
        .map(|(w, &sj)| w * f64::from(sj))
        .sum();
    Ok(gain_from_field(inst, s, i, field))
}

// W has a zero diagonal, so the local field excludes the self term.
fn gain_from_field(inst: &HopfieldInstance, s: &[i8], i: usize, field: f64) -> f64 {
    2.0 * f64::from(s[i]) * (field - inst.bias()[i])
}

fn initial_state(inst: &HopfieldInstance, init: &InitialState) -> Result<Vec<i8>> {
    let dim = inst.dimension();
    let s = match init {
        InitialState::AllInactive => vec![-1; dim],
        InitialState::Given(s) => s.clone(),
        InitialState::Random(seed) => random_state(dim, *seed),
    };
    check_state(inst, &s)?;
    Ok(s)
}

fn random_state(dim: usize, seed: u64) -> Vec<i8> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..dim)
        .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
        .collect()
}

/// One descent run from `cfg.initial_state`. Restarts are ignored here; see
/// [`solve_with_restarts`].
pub fn solve(inst: &HopfieldInstance, cfg: &SolverConfig) -> Result<(Vec<i8>, SolverTrace)> {
    let budget = cfg.budget(inst.dimension())?;
    let start = initial_state(inst, &cfg.initial_state)?;
    descend(inst, start, budget)
}

fn descend(inst: &HopfieldInstance, mut s: Vec<i8>, budget: usize) -> Result<(Vec<i8>, SolverTrace)> {
    let dim = inst.dimension();
    let weights = inst.weights();
    let mut field = weights.dot(&as_f64(&s));
    let mut e = energy(inst, &s)?;
    let mut trace = SolverTrace::default();
    trace.steps.push(TraceStep {
        t: 0,
        state: s.clone(),
        energy: e,
    });

    loop {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..dim {
            let g = gain_from_field(inst, &s, i, field[i]);
            if g < 0.0 && best.is_none_or(|(_, bg)| g < bg) {
                best = Some((i, g));
            }
        }
        let Some((i, g)) = best else {
            trace.converged = true;
            trace.steps.push(TraceStep {
                t: trace.flips + 1,
                state: s.clone(),
                energy: e,
            });
            return Ok((s, trace));
        };
        if trace.flips == budget {
            return Err(Error::MaxStepsExceeded { max_steps: budget });
        }
        s[i] = -s[i];
        let delta = 2.0 * f64::from(s[i]);
        field.scaled_add(delta, &weights.column(i));
        e += g;
        trace.flips += 1;
        trace.steps.push(TraceStep {
            t: trace.flips,
            state: s.clone(),
            energy: e,
        });
    }
}

/// Runs [`solve`]; if `accept` rejects the converged state and
/// `cfg.restarts > 0`, re-runs from random states seeded with
/// `cfg.seed + k` for `k = 0..restarts`. Returns the first accepted run, or
/// the last run with `accepted = false` once restarts are exhausted.
pub fn solve_with_restarts(
    inst: &HopfieldInstance,
    cfg: &SolverConfig,
    accept: impl Fn(&[i8]) -> bool,
) -> Result<SolveOutcome> {
    let budget = cfg.budget(inst.dimension())?;
    let (mut state, mut trace) = solve(inst, cfg)?;
    let mut attempts = 1;
    let mut accepted = accept(&state);
    for k in 0..cfg.restarts as u64 {
        if accepted {
            break;
        }
        let start = random_state(inst.dimension(), cfg.seed.wrapping_add(k));
        (state, trace) = descend(inst, start, budget)?;
        attempts += 1;
        accepted = accept(&state);
    }
    Ok(SolveOutcome {
        state,
        trace,
        attempts,
        accepted,
    })
}
