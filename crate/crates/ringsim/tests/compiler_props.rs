mod common;

use common::{bits, brute_count, exact_invertible_circuit, random_instance, zeros};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;
use ringsim::circuits::path_counts;
use ringsim::compiler::{
    build_affine_modkp, build_unitary_modkp, formula_to_reversible, formula_to_reversible_with_inputs,
    lower_to_small_gates, uncompute_wrap, Cnf, ReversiblePredicate,
};
use ringsim::gen::{random_cnf, rng};
use ringsim::oracle::{amplify_prime, count_accepting, sat_count, upk_decide, UpkDecision};
use ringsim::{BitString, Circuit, Decision, Gate, Matrix, ModalState, RingSpec, StateSpace};

fn expected_decision(count: u64, k: u64) -> Decision {
    match count % k {
        0 => Decision::Zero,
        1 => Decision::One,
        _ => unreachable!("promise input"),
    }
}

#[test]
fn uncompute_restores_work_wires() {
    let mut r = rng(30);
    for k in [2u64, 3, 4, 5, 9] {
        let ring = RingSpec::cyclic(k).unwrap();
        for _ in 0..8 {
            let n = r.gen_range(1..=3);
            let m = r.gen_range(0..=3);
            let c = exact_invertible_circuit(&mut r, &ring, n, m);
            let wrapped = uncompute_wrap(&c).unwrap();
            for x in 0..1usize << n {
                let xs = BitString::from_index(x, n);
                let bit = c.decide_default(&xs).unwrap() == Decision::One;
                let target = xs.concat(&zeros(m)).concat(&BitString(vec![bit]));
                assert_eq!(wrapped.run(&xs).unwrap(), ModalState::basis(&ring, &target).unwrap());
                let counts = path_counts(&wrapped, &xs).unwrap();
                for (y, count) in counts.iter().enumerate() {
                    let residue = count % BigUint::from(k);
                    let expect = BigUint::from((y == target.index()) as u8);
                    assert_eq!(residue, expect);
                }
            }
        }
    }
}

#[test]
fn uncompute_rejects_non_invertible() {
    let z3 = RingSpec::cyclic(3).unwrap();
    let mut c = Circuit::new(&z3, 1);
    c.gate("ERASE", &[1]).unwrap();
    assert!(uncompute_wrap(&c).is_err());
}

#[test]
fn unitary_build_is_unitary_sound_and_complete() {
    let mut r = rng(31);
    for k in [2u64, 3, 4, 5, 8, 9] {
        let ring = RingSpec::cyclic(k).unwrap();
        for _ in 0..4 {
            let (n, b) = (r.gen_range(0..=1), r.gen_range(1..=2));
            let inst = random_instance(&mut r, k, n, b, 2);
            let (c, lay) = build_unitary_modkp(&inst.pred, &ring).unwrap();
            assert!(c.gates().all(|(g, _)| g.classification().unitary), "k = {k}");
            assert_eq!(lay.width(), n + 5 * b + 3 * inst.pred.m() + 1);
            for (x, count) in &inst.promise_inputs {
                let out = c.run_sparse(x).unwrap();
                if count % k == 0 {
                    let tail = BitString(vec![true; lay.width() - n - 1]).concat(&zeros(1));
                    assert!(out.is_basis(&x.concat(&tail)), "k={k} x={x} count={count}");
                }
                assert_eq!(out.decide(lay.a, StateSpace::L2).unwrap(), expected_decision(*count, k));
                let dd = c.run_dd(x).unwrap();
                assert_eq!(dd.entries(usize::MAX).unwrap(), out.entries(), "k={k} x={x}");
                assert_eq!(dd.decide(lay.a, StateSpace::L2).unwrap(), expected_decision(*count, k));
            }
        }
    }
}

#[test]
fn affine_build_ends_in_one_bit_basis_state() {
    let mut r = rng(32);
    for k in [2u64, 3, 4, 5, 6, 9, 10] {
        let ring = RingSpec::cyclic(k).unwrap();
        for _ in 0..5 {
            let (n, b) = (r.gen_range(0..=2), r.gen_range(1..=3));
            let inst = random_instance(&mut r, k, n, b, 3);
            let (c, lay) = build_affine_modkp(&inst.pred, &ring).unwrap();
            assert!(c.all_affine());
            assert_eq!(lay.width, n + 2 * b + inst.pred.m() + 1);
            for (x, count) in &inst.promise_inputs {
                let out = c.run(x).unwrap();
                let bit = BitString(vec![count % k == 1]);
                assert_eq!(out, ModalState::basis(&ring, &bit).unwrap(), "k={k} x={x} count={count}");
            }
        }
    }
}

#[test]
fn three_way_agreement() {
    let mut r = rng(33);
    for k in [2u64, 3, 5, 9] {
        let ring = RingSpec::cyclic(k).unwrap();
        for _ in 0..4 {
            let b = r.gen_range(1..=2);
            let inst = random_instance(&mut r, k, 1, b, 2);
            let (u, _) = build_unitary_modkp(&inst.pred, &ring).unwrap();
            let (a, _) = build_affine_modkp(&inst.pred, &ring).unwrap();
            for (x, _) in &inst.promise_inputs {
                let du = u.decide_sparse(x, StateSpace::L2).unwrap();
                let da = a.decide_default(x).unwrap();
                let oracle = match upk_decide(&inst.pred, x, k).unwrap() {
                    UpkDecision::Zero => Decision::Zero,
                    UpkDecision::One => Decision::One,
                    UpkDecision::PromiseViolated => unreachable!(),
                };
                assert_eq!((du, da), (oracle, oracle));
            }
        }
    }
}

/// Counts accepting branches through path counting: the `B` wires start in
/// `Σ_b |b⟩` via the all-ones matrix, then `R` runs.
fn path_count_accepting(pred: &ReversiblePredicate, x: &BitString) -> BigUint {
    let ring = pred.ring();
    let (n, b, m) = (pred.n(), pred.b(), pred.m());
    let mut c = Circuit::new(ring, n);
    c.preps(b + m);
    let spread = Gate::custom(ring, Matrix::from_fn(2, 2, |_, _| ring.one())).unwrap();
    for w in n + 1..=n + b {
        c.apply(spread.clone(), &[w]).unwrap();
    }
    for (g, ws) in pred.circuit().gates() {
        c.apply(g.clone(), ws).unwrap();
    }
    path_counts(&c, x).unwrap().iter().enumerate().filter(|(y, _)| y & 1 == 1).map(|(_, v)| v).sum()
}

#[test]
fn path_counting_matches_enumeration() {
    let mut r = rng(34);
    for _ in 0..40 {
        let (n, b) = (r.gen_range(0..=2), r.gen_range(0..=4));
        let inst = random_instance(&mut r, 1 << 20, n, b, 3);
        for x in 0..1usize << n {
            let xs = BitString::from_index(x, n);
            let enumerated = count_accepting(&inst.pred, &xs, 2).unwrap().accepting;
            assert_eq!(enumerated, brute_count(&inst.cnf, &xs));
            assert_eq!(path_count_accepting(&inst.pred, &xs), BigUint::from(enumerated));
        }
    }
}

#[test]
fn amplification_raises_counts_to_k_minus_one() {
    let mut r = rng(35);
    for k in [3u64, 5, 7] {
        for _ in 0..6 {
            let (n, b) = (r.gen_range(0..=1), r.gen_range(1..=2));
            let inst = random_instance(&mut r, 1 << 20, n, b, 2);
            let amp = amplify_prime(&inst.pred, k).unwrap();
            assert_eq!((amp.b(), amp.m()), ((k as usize - 1) * b, (k as usize - 1) * inst.pred.m() + 1));
            for x in 0..1usize << n {
                let xs = BitString::from_index(x, n);
                let before = count_accepting(&inst.pred, &xs, k).unwrap().accepting;
                let after = count_accepting(&amp, &xs, k).unwrap().accepting;
                assert_eq!(after, before.pow(k as u32 - 1));
                // Fermat: the amplified count is 0 or 1 mod k.
                assert!(after % k <= 1);
            }
        }
    }
}

#[test]
fn lowered_unitary_build_matches() {
    let mut r = rng(36);
    for k in [3u64, 5] {
        let ring = RingSpec::cyclic(k).unwrap();
        let inst = random_instance(&mut r, k, 1, 2, 2);
        let (c, _) = build_unitary_modkp(&inst.pred, &ring).unwrap();
        let low = lower_to_small_gates(&c, 4).unwrap();
        assert!(low.circuit.max_arity() <= 4);
        assert!(low.circuit.gates().all(|(g, _)| g.classification().unitary));
        for x in ["0", "1"] {
            let xs = bits(x);
            let full = c.run_sparse(&xs).unwrap();
            let lowered = low.circuit.run_sparse(&xs).unwrap();
            let pad = zeros(low.pool);
            let expect: Vec<(BitString, _)> = full.entries().into_iter().map(|(s, a)| (s.concat(&pad), a)).collect();
            assert_eq!(lowered.entries(), expect);
            assert_eq!(low.circuit.run_dd(&xs).unwrap().entries(usize::MAX).unwrap(), expect);
        }
    }
}

#[test]
fn never_true_and_tautological_formulas() {
    let z3 = RingSpec::cyclic(3).unwrap();
    let never = formula_to_reversible(&Cnf::new(2, vec![vec![1], vec![-1]]).unwrap());
    assert_eq!(count_accepting(&never, &BitString::default(), 3).unwrap().accepting, 0);
    let always = formula_to_reversible(&Cnf::new(2, vec![vec![1, -1]]).unwrap());
    assert_eq!(count_accepting(&always, &BitString::default(), 3).unwrap().accepting, 4);
    let (u, _) = build_unitary_modkp(&always, &z3).unwrap();
    assert_eq!(u.decide_sparse(&BitString::default(), StateSpace::L2).unwrap(), Decision::One);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn predicates_agree_with_formulas(seed in 0u64..100_000, vars in 1usize..7, clauses in 0usize..6, width in 1usize..4, inputs in 0usize..3) {
        let phi = random_cnf(&mut rng(seed), vars, clauses, width);
        let inputs = inputs.min(vars);
        let pred = formula_to_reversible_with_inputs(&phi, inputs).unwrap();
        prop_assert_eq!(pred.n() + pred.b(), vars);
        for a in 0..1usize << vars {
            let assign = BitString::from_index(a, vars);
            let (x, b) = assign.0.split_at(inputs);
            let out = pred.eval_bits(x, b);
            prop_assert_eq!(*out.last().unwrap(), phi.eval(&assign.0));
            // Registers X and B unchanged; work wires other than the output cleared.
            prop_assert_eq!(&out[..vars], &assign.0[..]);
            prop_assert!(out[vars..out.len() - 1].iter().all(|&w| !w));
        }
        prop_assert_eq!(sat_count(&phi).unwrap(), (0..1usize << vars).filter(|&a| phi.eval(&BitString::from_index(a, vars).0)).count() as u64);
    }

    #[test]
    fn dimacs_and_predicate_text_round_trip(seed in 0u64..100_000, vars in 1usize..8, clauses in 0usize..8) {
        let phi = random_cnf(&mut rng(seed), vars, clauses, 3);
        prop_assert_eq!(Cnf::parse_dimacs(&phi.to_dimacs()).unwrap(), phi.clone());
        let pred = formula_to_reversible(&phi);
        prop_assert_eq!(ReversiblePredicate::parse(&pred.to_text()).unwrap(), pred);
    }
}
