use ndarray::{Array1, Array2};
use qubo_order::oracle::ordering_objective;
use qubo_order::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn distinct_values(n: usize, rng: &mut StdRng) -> Vec<f64> {
    let mut pool: Vec<i32> = (-1000..1000).collect();
    pool.shuffle(rng);
    pool[..n].iter().map(|&v| f64::from(v)).collect()
}

/// Plain enumeration in integer order, evaluating every state from scratch.
fn naive_min(inst: &QuboInstance) -> (Vec<u8>, f64) {
    let dim = inst.dimension();
    let mut best: Option<(Vec<u8>, f64)> = None;
    for code in 0u64..(1 << dim) {
        let z: Vec<u8> = (0..dim).map(|k| ((code >> k) & 1) as u8).collect();
        let v = qubo_objective(inst, &z).unwrap();
        if best.as_ref().is_none_or(|(_, b)| v < *b - 1e-9 * b.abs().max(1.0)) {
            best = Some((z, v));
        }
    }
    best.unwrap()
}

#[test]
fn gray_code_search_matches_naive_enumeration() {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..30 {
        let dim = 9;
        let mut r = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in i..dim {
                let v = f64::from(rng.gen_range(-6..6));
                r[[i, j]] = v;
                r[[j, i]] = v;
            }
        }
        let lin: Array1<f64> = (0..dim).map(|_| f64::from(rng.gen_range(-6..6))).collect();
        let inst = QuboInstance::from_parts(r, lin, 1., 1.).unwrap();
        let (z, v) = exhaustive_qubo_min(&inst).unwrap();
        let (nz, nv) = naive_min(&inst);
        assert_eq!(v, nv);
        assert_eq!(z, nz);
    }
}

#[test]
fn exhaustive_minimum_of_small_sorting_instance() {
    let x = ValueVector::new(vec![3., 1., 2.]).unwrap();
    let program = ascending_program(3).unwrap();
    let inst = build_qubo(&x, &program, &BuilderConfig::for_size(3)).unwrap();
    let (z, _) = exhaustive_qubo_min(&inst).unwrap();
    let p = decode_permutation(&z).unwrap();
    assert_eq!(apply_permutation(&p, &x).unwrap(), vec![1., 2., 3.]);
    let (oracle, _) = best_permutation(&x, &program).unwrap();
    assert_eq!(p, oracle);
}

#[test]
fn ascending_oracle_is_a_sort() {
    let mut rng = StdRng::seed_from_u64(31);
    for n in 1..=8 {
        for _ in 0..5 {
            let raw = distinct_values(n, &mut rng);
            let x = ValueVector::new(raw.clone()).unwrap();
            let (p, obj) = best_permutation(&x, &ascending_program(n).unwrap()).unwrap();
            let mut sorted = raw;
            sorted.sort_by(f64::total_cmp);
            assert_eq!(apply_permutation(&p, &x).unwrap(), sorted);
            assert_eq!(
                ordering_objective(x.entries(), &p, &ascending_program(n).unwrap()).unwrap(),
                obj
            );
        }
    }
}

#[test]
fn descending_oracle_reverses() {
    let x = ValueVector::new(vec![2., 9., -1., 4.]).unwrap();
    let (p, _) = best_permutation(&x, &descending_program(4).unwrap()).unwrap();
    assert_eq!(apply_permutation(&p, &x).unwrap(), vec![9., 4., 2., -1.]);
}

#[test]
fn certificate_with_ties_passes() {
    let x = ValueVector::new(vec![5., 1., 5.]).unwrap();
    let program = ascending_program(3).unwrap();
    let cfg = BuilderConfig::for_size(3);
    let out = pipeline::run(&x, &program, &cfg, &SolverConfig::default()).unwrap();
    let report = certify(&x, &program, &cfg, &out.state).unwrap();
    assert!(report.objective_tie);
    assert!(report.passed(), "{report:?}");
    assert!(report.notes.iter().any(|n| n.starts_with("objective-tie")));
}

#[test]
fn certificate_rejects_wrong_length_state() {
    let x = ValueVector::new(vec![1., 2.]).unwrap();
    let report = certify(&x, &ascending_program(2).unwrap(), &BuilderConfig::for_size(2), &[1, -1, -1]).unwrap();
    assert!(!report.feasible);
    assert!(!report.passed());
}

#[test]
fn suboptimal_permutation_is_not_certified() {
    let x = ValueVector::new(vec![3., 2., 1.]).unwrap();
    let program = heap_program(3, 2).unwrap();
    let wrong = PermutationMatrix::identity(3);
    let s = binary_to_bipolar(&wrong.encode()).unwrap();
    let report = certify(&x, &program, &BuilderConfig::for_size(3), &s).unwrap();
    assert!(report.feasible);
    assert!(!report.optimal);
    // [3, 2, 1] is a valid heap but not the canonical arrangement [3, 1, 2]
    assert_eq!(report.structure_valid, Some(true));
    assert!(!report.passed());
}
