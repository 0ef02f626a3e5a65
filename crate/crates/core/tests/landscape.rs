//! Shape of the Hopfield energy landscape for ordering instances built with
//! `lambda_r = lambda_c = n`.

use qubo_order::oracle::ordering_objective;
use qubo_order::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn values(n: usize, negatives: usize, rng: &mut StdRng) -> Vec<f64> {
    let mut pos: Vec<i32> = (1..1000).collect();
    let mut neg: Vec<i32> = (-1000..0).collect();
    pos.shuffle(rng);
    neg.shuffle(rng);
    let mut v: Vec<f64> = neg[..negatives]
        .iter()
        .chain(&pos[..n - negatives])
        .map(|&v| f64::from(v))
        .collect();
    v.shuffle(rng);
    v
}

// Any single flip away from a permutation costs at least 2n in penalty and
// gains at most n from the linear term.
#[test]
fn every_permutation_is_single_flip_stable() {
    use itertools::Itertools;
    let mut rng = StdRng::seed_from_u64(1);
    for n in 2..=5 {
        let x = ValueVector::new(values(n, n / 2, &mut rng)).unwrap();
        let inst = build_qubo(&x, &ascending_program(n).unwrap(), &BuilderConfig::for_size(n)).unwrap();
        let hop = hopfield_from_qubo(&inst);
        for mapping in (0..n).permutations(n) {
            let p = PermutationMatrix::from_mapping(mapping).unwrap();
            let s = binary_to_bipolar(&p.encode()).unwrap();
            assert!((0..n * n).all(|i| flip_gain(&hop, &s, i).unwrap() > 0.0));
        }
    }
}

#[test]
fn descent_is_exact_with_at_most_one_negative_input() {
    let mut rng = StdRng::seed_from_u64(2);
    for n in 1..=7 {
        for negatives in 0..=1.min(n) {
            for kind in 0..4 {
                let program = match kind {
                    0 => ascending_program(n),
                    1 => descending_program(n),
                    2 => bst_program(n, 2),
                    _ => heap_program(n, 2),
                }
                .unwrap();
                for _ in 0..10 {
                    let x = ValueVector::new(values(n, negatives, &mut rng)).unwrap();
                    let out = pipeline::run(&x, &program, &BuilderConfig::for_size(n), &SolverConfig::default())
                        .unwrap();
                    let p = out.permutation.as_ref().expect("feasible");
                    let (_, best) = best_permutation(&x, &program).unwrap();
                    assert_eq!(ordering_objective(x.entries(), p, &program).unwrap(), best);
                    assert_eq!(out.trace.flips, n);
                }
            }
        }
    }
}

#[test]
fn two_negative_inputs_can_trap_descent() {
    // From all-inactive the flips follow x'_i * rank_j greedily, which
    // pairs the smaller-magnitude negative with the lower rank.
    let x = ValueVector::new(vec![-1.0, -2.0, 3.0]).unwrap();
    let program = ascending_program(3).unwrap();
    let out = pipeline::run(&x, &program, &BuilderConfig::for_size(3), &SolverConfig::default()).unwrap();
    assert_eq!(out.output(&x).unwrap(), vec![-1.0, -2.0, 3.0]);
    let report = certify(&x, &program, &BuilderConfig::for_size(3), &out.state).unwrap();
    assert!(report.feasible);
    assert!(!report.optimal);
}
