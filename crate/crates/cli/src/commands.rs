use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use qubo_order::io::{parse_values, render_trace, ProgramFile, QuboFile};
use qubo_order::oracle::{ordering_objective, MAX_PERMUTATION_SIZE};
use qubo_order::pipeline::{self, solve_instance};
use qubo_order::{
    ascending_program, bst_program, build_qubo, certify, decode_permutation, descending_program,
    exhaustive_qubo_min, heap_program, BuilderConfig, Error, OrderProgram, SolverConfig,
    ValueVector,
};

use crate::Kind;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ZERO_INPUT: u8 = 3;
pub const EXIT_INFEASIBLE: u8 = 4;
pub const EXIT_VERIFY_FAILED: u8 = 5;

/// Largest `n` for `verify --exhaustive` (65,536 states at n = 4).
const MAX_EXHAUSTIVE_N: usize = 4;

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: EXIT_USAGE,
            error: error.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ZeroVector => EXIT_ZERO_INPUT,
            Error::MaxStepsExceeded { .. } => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            error: e.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::usage)
}

fn write_output(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::usage),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(Failure::usage)
        }
    }
}

fn load_values(path: &Path) -> Result<ValueVector, Failure> {
    parse_values(&read(path)?).map_err(|e| Failure::usage(anyhow!("{}: {e}", path.display())))
}

fn load_program(path: &Path) -> Result<OrderProgram, Failure> {
    let file: ProgramFile = serde_json::from_str(&read(path)?)
        .with_context(|| format!("parsing program file {}", path.display()))
        .map_err(Failure::usage)?;
    Ok(OrderProgram::try_from(file)?)
}

fn builder_config(
    n: usize,
    lambda_r: Option<f64>,
    lambda_c: Option<f64>,
    normalize: bool,
) -> Result<BuilderConfig, Failure> {
    let default = n as f64;
    Ok(BuilderConfig::new(
        lambda_r.unwrap_or(default),
        lambda_c.unwrap_or(default),
        normalize,
    )?)
}

fn fmt_values(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("[{}]", items.join(", "))
}

pub fn program(kind: Kind, n: usize, b: usize, out: Option<&Path>) -> CmdResult {
    let program = match kind {
        Kind::Ascending => ascending_program(n),
        Kind::Descending => descending_program(n),
        Kind::Bst => bst_program(n, b),
        Kind::Heap => heap_program(n, b),
    }?;
    let json = serde_json::to_string(&ProgramFile::from(&program)).map_err(Failure::usage)?;
    write_output(out, &json)
}

pub fn build(
    x_path: &Path,
    program_path: &Path,
    lambda_r: Option<f64>,
    lambda_c: Option<f64>,
    normalize: bool,
    out: Option<&Path>,
) -> CmdResult {
    let x = load_values(x_path)?;
    let program = load_program(program_path)?;
    let cfg = builder_config(program.len(), lambda_r, lambda_c, normalize)?;
    let inst = build_qubo(&x, &program, &cfg)?;
    let mut file = QuboFile::from_instance(&inst, normalize);
    file.x = Some(x.entries().to_vec());
    file.ranks = Some(program.ranks().to_vec());
    let json = serde_json::to_string(&file).map_err(Failure::usage)?;
    write_output(out, &json)
}

pub fn solve(
    qubo_path: &Path,
    trace: bool,
    seed: u64,
    restarts: usize,
    max_steps: Option<usize>,
    x_path: Option<&Path>,
) -> CmdResult {
    let file: QuboFile = serde_json::from_str(&read(qubo_path)?)
        .with_context(|| format!("parsing QUBO file {}", qubo_path.display()))
        .map_err(Failure::usage)?;
    let inst = file.to_instance()?;
    let x = match x_path {
        Some(p) => Some(load_values(p)?),
        None => file.values().transpose()?,
    };
    if let Some(x) = &x {
        if x.len() != inst.source_n() {
            return Err(Error::DimensionMismatch {
                expected: inst.source_n(),
                found: x.len(),
            }
            .into());
        }
    }
    let solver = SolverConfig {
        max_steps,
        restarts,
        seed,
        ..Default::default()
    };
    let out = solve_instance(inst, &solver)?;

    if trace {
        print!("{}", render_trace(&out.trace));
    }
    let final_energy = out.trace.steps.last().map_or(f64::NAN, |s| s.energy);
    println!("flips: {}", out.trace.flips);
    println!("attempts: {}", out.attempts);
    println!("energy: {final_energy}");
    let Some(p) = &out.permutation else {
        return Err(Failure {
            code: EXIT_INFEASIBLE,
            error: anyhow!(
                "converged state does not encode a permutation after {} attempt(s)",
                out.attempts
            ),
        });
    };
    println!("mapping: {:?}", p.as_mapping());
    if let Some(x) = &x {
        let y = qubo_order::apply_permutation(p, x)?;
        println!("output: {}", fmt_values(&y));
    }
    Ok(())
}

fn check_line(ok: bool, name: &str, detail: &str) -> bool {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

pub fn verify(
    x_path: &Path,
    program_path: &Path,
    exhaustive: bool,
    seed: u64,
    restarts: usize,
    lambda_r: Option<f64>,
    lambda_c: Option<f64>,
) -> CmdResult {
    let x = load_values(x_path)?;
    let program = load_program(program_path)?;
    let n = program.len();
    if n > MAX_PERMUTATION_SIZE {
        return Err(Failure::usage(anyhow!(
            "verify supports n <= {MAX_PERMUTATION_SIZE}, got {n}"
        )));
    }
    if exhaustive && n > MAX_EXHAUSTIVE_N {
        return Err(Failure::usage(anyhow!(
            "--exhaustive supports n <= {MAX_EXHAUSTIVE_N}, got {n}"
        )));
    }
    let cfg = builder_config(n, lambda_r, lambda_c, true)?;
    let solver = SolverConfig {
        restarts,
        seed,
        ..Default::default()
    };

    // The exhaustive search is independent of the descent run.
    let (run, exhaustive_result) = std::thread::scope(|scope| {
        let search = exhaustive.then(|| {
            scope.spawn(|| {
                build_qubo(&x, &program, &cfg).and_then(|inst| exhaustive_qubo_min(&inst))
            })
        });
        let run = pipeline::run(&x, &program, &cfg, &solver);
        (run, search.map(|h| h.join().expect("exhaustive search panicked")))
    });
    let run = run?;
    let report = certify(&x, &program, &cfg, &run.state)?;

    let mut ok = true;
    ok &= check_line(
        report.feasible,
        "feasible",
        &match &report.mapping {
            Some(m) => format!("state decodes to mapping {m:?}"),
            None => "state is not a permutation encoding".into(),
        },
    );
    ok &= check_line(
        report.optimal,
        "optimal",
        &format!(
            "achieved {} vs oracle {}",
            report
                .achieved_objective
                .map_or_else(|| "n/a".to_string(), |v| v.to_string()),
            report.optimal_objective
        ),
    );
    match report.structure_valid {
        Some(valid) => {
            ok &= check_line(valid, "structure", &format!("{} property", report.kind));
        }
        None => println!("SKIP structure: no structural check for kind {}", report.kind),
    }
    if let Some(result) = exhaustive_result {
        let (z, value) = result?;
        let detail = match decode_permutation(&z) {
            Ok(p) => {
                let achieved = ordering_objective(x.entries(), &p, &program)?;
                let agrees = (achieved - report.optimal_objective).abs()
                    <= 1e-9 * report.optimal_objective.abs().max(1.0);
                ok &= check_line(
                    agrees,
                    "exhaustive",
                    &format!("global QUBO minimum {value} decodes to objective {achieved}"),
                );
                None
            }
            Err(e) => Some(e),
        };
        if let Some(e) = detail {
            ok &= check_line(false, "exhaustive", &format!("global QUBO minimum infeasible: {e}"));
        }
    }
    if let Some(y) = &report.output {
        println!("output: {}", fmt_values(y));
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    if ok {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(Failure {
            code: EXIT_VERIFY_FAILED,
            error: anyhow!("verification failed"),
        })
    }
}
